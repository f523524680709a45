//! `Ĥ`, `ε(H, K)`, `e(N, H, K)` and centralizers of group-algebra elements.

use std::sync::Arc;


use super::QGElement;
use crate::error::{Error, Result};
use crate::field::Rat;
use crate::group::{FiniteGroup, Subgroup};

/// `Ĥ = (1/|H|) Σ_{h ∈ H} h`.
pub fn hat(group: &Arc<FiniteGroup>, s: &Subgroup) -> QGElement {
    let c = Rat::new(1.into(), s.order().into());
    QGElement::from_coeffs(group, s.members().iter().map(|&x| (x, c.clone())))
}

/// `ε(H, K)`: `K̂` when `H = K`, otherwise `∏ (K̂ - L̂)` over the minimal
/// normal subgroups `L` of `H` properly containing `K`.
pub fn epsilon(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<QGElement> {
    if !group.is_normal(k, h) {
        return Err(Error::NotNormal("K is not normal in H".into()));
    }
    let k_hat = hat(group, k);
    if h == k {
        return Ok(k_hat);
    }
    // K̂ - L̂ = K̂ (1 - L̂) since K ≤ L, and the factors commute.
    let mut acc = k_hat;
    for l in group.minimal_normal_overgroups(h, k)? {
        let factor = QGElement::one(group).sub(&hat(group, &l))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Sum of the distinct `N`-conjugates of `ε(H, K)`.
pub fn e_sum_conjugates(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<QGElement> {
    if !k.is_subgroup_of(h) || !h.is_subgroup_of(n) {
        return Err(Error::ContainmentViolation("expected K ≤ H ≤ N".into()));
    }
    let eps = epsilon(group, h, k)?;
    Ok(sum_of_conjugates(group, &eps, n))
}

/// Sum of the distinct conjugates of `a` under `n`.
pub(crate) fn sum_of_conjugates(group: &Arc<FiniteGroup>, a: &QGElement, n: &Subgroup) -> QGElement {
    let c = centralizer_of(a, n);
    let mut acc = QGElement::zero(group);
    for t in group.right_transversal(&c, n) {
        acc = acc.add(&a.conj(t)).expect("same group");
    }
    acc
}

/// `{g ∈ within : g^-1 a g = a}`.
pub fn centralizer_of(a: &QGElement, within: &Subgroup) -> Subgroup {
    let g = a.group();
    let mut gens: Vec<usize> = vec![];
    let mut cur = g.trivial();
    for &x in within.members() {
        if cur.contains(x) || !a.is_fixed_by(x) {
            continue;
        }
        gens.push(x);
        cur = g.subgroup_generated(&gens);
    }
    cur
}
