//! Groups from power-commutator presentations.
//!
//! A presentation on generators `x1..xn` with relative orders `p_i` lists
//! `x_i^{p_i}` as a word in `x_{i+1}..x_n` and `[x_j, x_i] = x_j^-1 x_i^-1 x_j x_i`
//! (for `j > i`) as a word in `x_{i+1}..x_n`. Missing relations are trivial.
//!
//! Elements are the normal words `x1^a1 ... xn^an` with `0 <= a_i < p_i`,
//! indexed in mixed radix with `x1` most significant. The group is assembled
//! from the bottom of the polycyclic series upwards: `G_i = <x_i, G_{i+1}>`
//! is a cyclic extension of `G_{i+1}`, and moving `x_i` to the left across a
//! tail `g` of later generators uses `g x_i = x_i g^{x_i}` with the
//! conjugation action read off the commutator relations. Each extension is
//! checked for consistency (the action is an automorphism fixing the power
//! word, and its `p_i`-th power is conjugation by that word) before it is
//! used, so an inconsistent presentation is rejected instead of producing a
//! non-associative table.

use std::collections::BTreeMap;

use super::words::{format_word, parse_word, Word};
use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    orders: Vec<u32>,
    /// 0-based generator -> word for `x_i^{p_i}`.
    powers: BTreeMap<usize, Word>,
    /// 0-based `(j, i)` with `j > i` -> word for `[x_j, x_i]`.
    commutators: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    pub fn new(orders: Vec<u32>) -> Self {
        PcPresentation {
            orders,
            powers: BTreeMap::new(),
            commutators: BTreeMap::new(),
        }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    fn check_gen(&self, g: usize) -> Result<usize> {
        if g == 0 || g > self.orders.len() {
            return Err(Error::InconsistentPresentation(format!(
                "generator x{g} out of range"
            )));
        }
        Ok(g - 1)
    }

    /// `x_i^{p_i} = word` (1-based `i`).
    pub fn with_power(mut self, i: usize, word: &str) -> Result<Self> {
        let i0 = self.check_gen(i)?;
        self.powers.insert(i0, parse_word(word)?);
        Ok(self)
    }

    /// `[x_j, x_i] = word` (1-based, `j > i`).
    pub fn with_commutator(mut self, j: usize, i: usize, word: &str) -> Result<Self> {
        let j0 = self.check_gen(j)?;
        let i0 = self.check_gen(i)?;
        if j0 <= i0 {
            return Err(Error::InconsistentPresentation(format!(
                "commutator [x{j}, x{i}] must have j > i"
            )));
        }
        self.commutators.insert((j0, i0), parse_word(word)?);
        Ok(self)
    }

    /// Relations as 1-based string maps, for serialisation.
    pub fn power_strings(&self) -> BTreeMap<String, String> {
        self.powers
            .iter()
            .map(|(i, w)| ((i + 1).to_string(), format_word(w)))
            .collect()
    }

    pub fn commutator_strings(&self) -> BTreeMap<String, String> {
        self.commutators
            .iter()
            .map(|((j, i), w)| (format!("{},{}", j + 1, i + 1), format_word(w)))
            .collect()
    }

    pub fn group_order(&self) -> usize {
        self.orders.iter().map(|&p| p as usize).product()
    }
}

/// Multiplication table of one term `G_i` of the polycyclic series.
struct Level {
    size: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
}

impl Level {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    fn from_table(size: usize, table: Vec<u16>) -> Self {
        let mut inv = vec![0u16; size];
        for a in 0..size {
            for b in 0..size {
                if table[a * size + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        Level { size, table, inv }
    }
}

impl FiniteGroup {
    pub fn from_pc_presentation(pres: &PcPresentation) -> Result<Self> {
        let n = pres.orders.len();
        let order = pres.group_order();
        if pres.orders.contains(&0) {
            return Err(Error::InconsistentPresentation("relative order 0".into()));
        }
        if order > FiniteGroup::MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "presentation order".into(),
                cap: FiniteGroup::MAX_ORDER,
                got: order,
            });
        }
        // stride[j]: index weight of x_j, shared by every level.
        let mut stride = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            stride[j] = stride[j + 1] * pres.orders[j + 1] as usize;
        }
        let mut level = Level::from_table(1, vec![0]);
        for i in (0..n).rev() {
            level = extend(pres, i, &stride, &level)?;
        }
        debug_assert_eq!(level.size, order);
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| level.mul(a, b)).collect())
            .collect();
        let group = FiniteGroup::from_cayley(&rows).map_err(|e| {
            Error::InconsistentPresentation(format!("assembled table is not a group: {e}"))
        })?;
        let labels = (0..order)
            .map(|x| {
                let w: Word = (0..n)
                    .map(|j| (j, ((x / stride[j]) % pres.orders[j] as usize) as i64))
                    .filter(|&(_, e)| e != 0)
                    .collect();
                format_word(&w)
            })
            .collect();
        let gens = (0..n).map(|j| stride[j]).collect();
        Ok(group.with_labels(labels).with_generators(gens))
    }
}

/// Builds `G_i` from `G_{i+1}` (`sub`).
fn extend(pres: &PcPresentation, i: usize, stride: &[usize], sub: &Level) -> Result<Level> {
    let p = pres.orders[i] as usize;
    let s = sub.size;
    let eval = |w: &Word, what: &str| -> Result<usize> {
        let mut acc = 0usize;
        for &(g, e) in w {
            if g <= i || g >= pres.orders.len() {
                return Err(Error::InconsistentPresentation(format!(
                    "{what} uses x{} which is not below x{}",
                    g + 1,
                    i + 1
                )));
            }
            let mut x = stride[g];
            if e < 0 {
                x = sub.inv[x] as usize;
            }
            for _ in 0..e.unsigned_abs() {
                acc = sub.mul(acc, x);
            }
        }
        Ok(acc)
    };
    let power = match pres.powers.get(&i) {
        Some(w) => eval(w, &format!("power relation of x{}", i + 1))?,
        None => 0,
    };
    // Images x_j^{x_i} = x_j [x_j, x_i] of the later generators.
    let mut gen_images = vec![];
    for j in i + 1..pres.orders.len() {
        let c = match pres.commutators.get(&(j, i)) {
            Some(w) => eval(w, &format!("commutator [x{}, x{}]", j + 1, i + 1))?,
            None => 0,
        };
        gen_images.push(sub.mul(stride[j], c));
    }
    // Extend the action to every normal word of G_{i+1}.
    let mut act = vec![0usize; s];
    for (r, slot) in act.iter_mut().enumerate() {
        let mut acc = 0;
        for (off, j) in (i + 1..pres.orders.len()).enumerate() {
            let a = (r / stride[j]) % pres.orders[j] as usize;
            for _ in 0..a {
                acc = sub.mul(acc, gen_images[off]);
            }
        }
        *slot = acc;
    }
    let fail = |msg: String| Err(Error::InconsistentPresentation(msg));
    let mut hit = vec![false; s];
    for &y in &act {
        if std::mem::replace(&mut hit[y], true) {
            return fail(format!("conjugation by x{} is not bijective", i + 1));
        }
    }
    for a in 0..s {
        for b in 0..s {
            if act[sub.mul(a, b)] != sub.mul(act[a], act[b]) {
                return fail(format!(
                    "conjugation by x{} is not a homomorphism",
                    i + 1
                ));
            }
        }
    }
    if act[power] != power {
        return fail(format!("x{} does not commute with its power word", i + 1));
    }
    // act^b for b < p, and act^p must be conjugation by the power word.
    let mut act_pows = vec![(0..s).collect::<Vec<usize>>()];
    for b in 1..=p {
        let prev = &act_pows[b - 1];
        act_pows.push(prev.iter().map(|&x| act[x]).collect());
    }
    let winv = sub.inv[power] as usize;
    for g in 0..s {
        if act_pows[p][g] != sub.mul(winv, sub.mul(g, power)) {
            return fail(format!(
                "x{}^{} acts differently from its power word",
                i + 1,
                p
            ));
        }
    }
    let size = p * s;
    let mut table = vec![0u16; size * size];
    for a in 0..p {
        for g in 0..s {
            let x = a * s + g;
            for b in 0..p {
                let moved = act_pows[b][g];
                for h in 0..s {
                    let mut tail = sub.mul(moved, h);
                    let mut c = a + b;
                    if c >= p {
                        c -= p;
                        tail = sub.mul(power, tail);
                    }
                    table[x * size + b * s + h] = (c * s + tail) as u16;
                }
            }
        }
    }
    Ok(Level::from_table(size, table))
}
