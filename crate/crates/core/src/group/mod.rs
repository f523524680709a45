//! Finite groups given by a materialised Cayley table.
//!
//! Elements are dense indices `0..order` with `0` the identity. Every group
//! the library handles has order at most [`FiniteGroup::MAX_ORDER`], so the
//! full table fits in a few megabytes of `u16` entries and multiplication is a
//! single lookup.

mod build;
mod classes;
mod pc;
mod subgroup;
mod words;

pub use build::Permutation;
pub use classes::{ClassKind, ConjugacyPartition};
pub use pc::PcPresentation;
pub use subgroup::{Quotient, SubnormalSeries, Subgroup};
pub use words::{parse_word, Word};

use crate::error::{Error, Result};

pub type Elem = usize;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    element_orders: Vec<u32>,
    labels: Option<Vec<String>>,
    generators: Vec<Elem>,
    default_gens: Vec<Elem>,
}

impl FiniteGroup {
    pub const MAX_ORDER: usize = 2048;

    /// Orders up to this bound get an exhaustive associativity scan; larger
    /// tables are checked with Light's test over a generating set.
    const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

    /// Validates a Cayley table and builds the group.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(not_a_group("empty table", vec![]));
        }
        if n > Self::MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "group order".into(),
                cap: Self::MAX_ORDER,
                got: n,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group("table is not square", vec![a]));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(not_a_group("entry out of range", vec![a, b]));
                }
                flat.push(c as u16);
            }
        }
        Self::from_flat(n, flat)
    }

    pub(crate) fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| f(a, b)).collect())
            .collect();
        Self::from_cayley(&rows)
    }

    fn from_flat(n: usize, table: Vec<u16>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(not_a_group("element 0 is not an identity", vec![x]));
            }
        }
        // Latin square rows give unique right solutions, which yields inverses.
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = at(a, b);
                if seen[c] {
                    return Err(not_a_group("row is not a permutation", vec![a, b]));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        for a in 0..n {
            if at(inv[a] as usize, a) != 0 {
                return Err(not_a_group("inverse is not two-sided", vec![a]));
            }
        }
        let mut g = FiniteGroup {
            order: n,
            table,
            inv,
            element_orders: vec![],
            labels: None,
            generators: vec![],
            default_gens: vec![],
        };
        g.check_associative()?;
        g.element_orders = (0..n).map(|x| g.compute_order(x)).collect();
        g.default_gens = g.whole().generators().to_vec();
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        if n <= Self::EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(not_a_group("associativity fails", vec![a, b, c]));
                        }
                    }
                }
            }
            return Ok(());
        }
        // Light's test: the set of middle elements b with (ab)c = a(bc) for
        // all a, c is closed under products, so generators suffice.
        for b in self.magma_generators() {
            for a in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(not_a_group("associativity fails", vec![a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy set whose closure under multiplication is everything.
    fn magma_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut covered = vec![false; n];
        covered[0] = true;
        let mut members = vec![0usize];
        let mut gens = vec![];
        for x in 0..n {
            if covered[x] {
                continue;
            }
            gens.push(x);
            let mut i = 0;
            // Re-close under right multiplication by every generator so far.
            let mut queue: Vec<usize> = members.clone();
            while i < queue.len() {
                let a = queue[i];
                i += 1;
                for &s in &gens {
                    let c = self.mul(a, s);
                    if !covered[c] {
                        covered[c] = true;
                        queue.push(c);
                    }
                }
            }
            members = queue;
        }
        gens
    }

    fn compute_order(&self, x: usize) -> u32 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn with_generators(mut self, gens: Vec<Elem>) -> Self {
        self.generators = gens;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    /// Raw table lookup at `a * order + b`.
    #[inline]
    pub(crate) fn table_entry(&self, idx: usize) -> Elem {
        self.table[idx] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let ord = self.element_order(a) as i64;
        let e = e.rem_euclid(ord);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    #[inline]
    pub fn element_order(&self, a: Elem) -> u32 {
        self.element_orders[a]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("#{a}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Named generators (`x1, x2, ...`) used when parsing words.
    pub fn named_generators(&self) -> &[Elem] {
        &self.generators
    }

    /// A generating set: the named generators when present, otherwise a
    /// greedy choice in increasing index order.
    pub fn generating_set(&self) -> Vec<Elem> {
        if !self.generators.is_empty() {
            return self.generators.clone();
        }
        self.default_gens.clone()
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let nb = b.order;
        let g = FiniteGroup::from_fn(a.order * nb, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })?;
        let gens = a
            .generating_set()
            .into_iter()
            .map(|x| x * nb)
            .chain(b.generating_set())
            .filter(|&x| x != 0)
            .collect();
        Ok(g.with_generators(gens))
    }
}

fn not_a_group(reason: &str, witness: Vec<usize>) -> Error {
    Error::NotAGroup {
        reason: reason.into(),
        witness,
    }
}
