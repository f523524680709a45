//! Subgroups and the operations on them needed for Shoda pair theory.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{Elem, FiniteGroup};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// A subgroup, stored as a sorted member list plus a membership bitset.
///
/// Equality and hashing depend on the member set only; `gens` is a
/// generating set kept around to make joins and closures cheap.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: ElemSet,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mask.hash(state)
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &ElemSet {
        &self.mask
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }
}

/// `H = H_0 ⊴ H_1 ⊴ ... ⊴ H_n = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalSeries {
    pub steps: Vec<Subgroup>,
}

impl SubnormalSeries {
    /// Number of normal steps (`steps.len() - 1`).
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Quotient `H/K` with cosets numbered by their least element.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the coset of `g` for `g ∈ H`, `None` outside `H`.
    pub projection: Vec<Option<usize>>,
    pub representatives: Vec<Elem>,
}

impl FiniteGroup {
    /// Closure of a set of elements.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let (gens, mut members, mask) = span(self, gens);
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            gens,
        }
    }

    /// Closure of an element set which is already known to be a subgroup.
    pub fn subgroup_from_members(&self, members: &[Elem]) -> Result<Subgroup> {
        let mask = ElemSet::from_iter(self.order(), members.iter().copied());
        let closed = mask.contains(0)
            && members.iter().all(|&a| {
                mask.contains(self.inv(a)) && members.iter().all(|&b| mask.contains(self.mul(a, b)))
            });
        if !closed {
            return Err(Error::ContainmentViolation(
                "element set is not closed under products and inverses".into(),
            ));
        }
        let s = self.subgroup_generated(members);
        Ok(s)
    }

    pub fn whole(&self) -> Subgroup {
        if !self.default_gens.is_empty() || self.order() == 1 {
            return self.subgroup_generated(&self.default_gens);
        }
        let mut gens = vec![];
        let mut cur = self.trivial();
        for x in self.elements() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.subgroup_generated(&gens);
            }
        }
        cur
    }

    pub fn trivial(&self) -> Subgroup {
        self.subgroup_generated(&[])
    }

    pub fn cyclic_subgroup(&self, g: Elem) -> Subgroup {
        self.subgroup_generated(&[g])
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().filter(|&&x| !a.contains(x)));
        self.subgroup_generated(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
        self.subgroup_generated(&members)
    }

    /// `K ⊴ H` (with `K ≤ H`).
    pub fn is_normal(&self, k: &Subgroup, h: &Subgroup) -> bool {
        k.is_subgroup_of(h)
            && h.gens.iter().all(|&g| k.gens.iter().all(|&x| k.contains(self.conj(x, g))))
    }

    pub fn normalizer(&self, h: &Subgroup, within: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = within
            .members
            .iter()
            .copied()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        self.subgroup_generated(&members)
    }

    pub fn centralizer_elem(&self, x: Elem, within: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = within
            .members
            .iter()
            .copied()
            .filter(|&g| self.mul(x, g) == self.mul(g, x))
            .collect();
        self.subgroup_generated(&members)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let members: Vec<Elem> = self
            .elements()
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        self.subgroup_generated(&members)
    }

    /// Normal closure of `s` in `within` (assumes `s ≤ within`).
    pub fn normal_closure(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut cur = s.clone();
        loop {
            let extra: Vec<Elem> = cur
                .gens
                .iter()
                .flat_map(|&x| within.gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !cur.contains(y))
                .collect();
            if extra.is_empty() {
                return cur;
            }
            let mut gens = cur.gens.clone();
            gens.extend(extra);
            cur = self.subgroup_generated(&gens);
        }
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let comms: Vec<Elem> = h
            .gens
            .iter()
            .flat_map(|&a| h.gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        let c = self.subgroup_generated(&comms);
        self.normal_closure(&c, h)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let gens: Vec<Elem> = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        self.subgroup_generated(&gens)
    }

    /// Right transversal of `sub` in `within`: the least element of every
    /// right coset `sub·x`, in increasing order.
    pub fn right_transversal(&self, sub: &Subgroup, within: &Subgroup) -> Vec<Elem> {
        let mut covered = ElemSet::new(self.order());
        let mut reps = vec![];
        for &x in &within.members {
            if covered.contains(x) {
                continue;
            }
            reps.push(x);
            for &s in &sub.members {
                covered.insert(self.mul(s, x));
            }
        }
        reps
    }

    pub fn quotient(&self, h: &Subgroup, k: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(k, h) {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} in subgroup of order {}",
                k.order(),
                h.order()
            )));
        }
        // Left and right cosets agree; representatives are least elements.
        let mut projection = vec![None; self.order()];
        let mut reps = vec![];
        for &x in &h.members {
            if projection[x].is_some() {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in &k.members {
                projection[self.mul(x, y)] = Some(id);
            }
        }
        let group = FiniteGroup::from_fn(reps.len(), |a, b| {
            projection[self.mul(reps[a], reps[b])].expect("coset product stays in H")
        })?;
        Ok(Quotient {
            group,
            projection,
            representatives: reps,
        })
    }

    /// `K ⊴ H` with `H/K` cyclic.
    pub fn is_cyclic_quotient(&self, h: &Subgroup, k: &Subgroup) -> bool {
        if !self.is_normal(k, h) {
            return false;
        }
        let idx = h.order() / k.order();
        h.members.iter().any(|&x| self.coset_order(x, k) == idx)
    }

    /// Order of `xK` in `N(K)/K`.
    pub fn coset_order(&self, x: Elem, k: &Subgroup) -> usize {
        let mut y = x;
        let mut n = 1;
        while !k.contains(y) {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// All `L` with `K < L ⊴ H` minimal with that property.
    pub fn minimal_normal_overgroups(&self, h: &Subgroup, k: &Subgroup) -> Result<Vec<Subgroup>> {
        if !self.is_normal(k, h) {
            return Err(Error::NotNormal("K is not normal in H".into()));
        }
        // Every such L is the normal closure of K together with any of its
        // elements outside K.
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut cands: Vec<Subgroup> = vec![];
        let mut covered = k.mask.clone();
        for &x in &h.members {
            if covered.contains(x) {
                continue;
            }
            let mut gens = k.gens.clone();
            gens.push(x);
            let l = self.normal_closure(&self.subgroup_generated(&gens), h);
            for &y in &k.members {
                covered.insert(self.mul(x, y));
            }
            if seen.insert(l.mask.clone()) {
                cands.push(l);
            }
        }
        let minimal: Vec<Subgroup> = cands
            .iter()
            .filter(|l| {
                !cands
                    .iter()
                    .any(|m| m.order() < l.order() && m.is_subgroup_of(l))
            })
            .cloned()
            .collect();
        Ok(sorted(minimal))
    }

    /// Series from `h` up to the whole group by iterated normal closures.
    pub fn subnormal_series(&self, h: &Subgroup) -> Result<SubnormalSeries> {
        let mut down = vec![self.whole()];
        loop {
            let top = down.last().expect("nonempty");
            let next = self.normal_closure(h, top);
            if next == *top {
                break;
            }
            down.push(next);
        }
        let bottom = down.last().expect("nonempty");
        if bottom != h {
            return Err(Error::NotSubnormal {
                stuck_at: bottom.order(),
            });
        }
        down.reverse();
        // The last closure equals h; replace it by h to keep its generators.
        down[0] = h.clone();
        Ok(SubnormalSeries { steps: down })
    }

    pub fn is_subnormal(&self, h: &Subgroup) -> bool {
        self.subnormal_series(h).is_ok()
    }

    /// Checks that every cyclic subgroup whose order divides neither 4 nor 6
    /// is subnormal. Returns the least offending element on failure.
    pub fn check_cyclic_subnormal_hypothesis(&self) -> (bool, Option<Elem>) {
        let mut tested: HashSet<ElemSet> = HashSet::new();
        for g in self.elements() {
            let o = self.element_order(g);
            if 4 % o == 0 || 6 % o == 0 {
                continue;
            }
            let c = self.cyclic_subgroup(g);
            if !tested.insert(c.mask.clone()) {
                continue;
            }
            if !self.is_subnormal(&c) {
                return (false, Some(g));
            }
        }
        (true, None)
    }

    /// Every subgroup exactly once, sorted by order then members.
    ///
    /// Cyclic extension: start from the cyclic subgroups and keep joining
    /// known subgroups with cyclic ones until nothing new appears. Every
    /// subgroup is a join of cyclic subgroups, so this is exhaustive.
    pub fn all_subgroups(&self, order_cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > order_cap {
            return Err(Error::CapExceeded {
                what: "subgroup enumeration group order".into(),
                cap: order_cap,
                got: self.order(),
            });
        }
        let mut seen: HashMap<ElemSet, usize> = HashMap::new();
        let mut all: Vec<Subgroup> = vec![];
        let mut cyclic: Vec<Subgroup> = vec![];
        for g in self.elements() {
            let c = self.cyclic_subgroup(g);
            if !seen.contains_key(&c.mask) {
                seen.insert(c.mask.clone(), all.len());
                all.push(c.clone());
                cyclic.push(c);
            }
        }
        let mut i = 0;
        while i < all.len() {
            let s = all[i].clone();
            for z in &cyclic {
                if z.is_subgroup_of(&s) {
                    continue;
                }
                let j = self.join(&s, z);
                if !seen.contains_key(&j.mask) {
                    seen.insert(j.mask.clone(), all.len());
                    all.push(j);
                }
            }
            i += 1;
        }
        Ok(sorted(all))
    }

    /// Every subgroup containing `h` (including `h` and the whole group),
    /// sorted by order then members.
    pub fn overgroups(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        seen.insert(h.mask.clone());
        let mut all = vec![h.clone()];
        let mut i = 0;
        while i < all.len() {
            let s = all[i].clone();
            let mut covered = s.mask.clone();
            for x in self.elements() {
                if covered.contains(x) {
                    continue;
                }
                let mut gens = s.gens.clone();
                gens.push(x);
                let j = self.subgroup_generated(&gens);
                // Every element of the right coset s·x gives the same join.
                for &t in &s.members {
                    covered.insert(self.mul(t, x));
                }
                if seen.insert(j.mask.clone()) {
                    all.push(j);
                }
            }
            i += 1;
        }
        sorted(all)
    }
}

fn sorted(mut v: Vec<Subgroup>) -> Vec<Subgroup> {
    v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    v
}

/// Closure of `gens`, dropping generators already in the span of earlier
/// ones. Returns the kept generators, the members and their bitset.
fn span(g: &FiniteGroup, gens: &[Elem]) -> (Vec<Elem>, Vec<Elem>, ElemSet) {
    let mut kept: Vec<Elem> = vec![];
    let mut mask = ElemSet::from_iter(g.order(), [0]);
    let mut members = vec![0];
    for &x in gens {
        if mask.contains(x) {
            continue;
        }
        kept.push(x);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &s in &kept {
                let c = g.mul(a, s);
                if mask.insert(c) {
                    members.push(c);
                }
            }
            i += 1;
        }
    }
    (kept, members, mask)
}
