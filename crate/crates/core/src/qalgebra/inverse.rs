//! Inverses in `QG`.
//!
//! An element lies in `QS` for `S` the subgroup generated by its support, and
//! so does its inverse. When `S` is cyclic the inverse is read off the
//! components `Q(ζ_d)`, `d | |S|`; otherwise the regular representation of
//! `QS` is solved by fraction-free elimination.

use num_traits::Zero;

use super::QGElement;
use crate::error::{Error, Result};
use crate::field::{Cyclotomic, Rat};
use crate::group::{Elem, Subgroup};
use crate::linalg;

/// Matrix of right multiplication by `a` on the basis `G`:
/// entry `[y][x]` is the coefficient of `y` in `x·a`, i.e. `a(x^-1 y)`.
pub fn regular_matrix(a: &QGElement) -> Vec<Vec<Rat>> {
    let g = a.group();
    let members: Vec<Elem> = g.elements().collect();
    regular_matrix_on(a, &members)
}

fn regular_matrix_on(a: &QGElement, basis: &[Elem]) -> Vec<Vec<Rat>> {
    let g = a.group();
    basis
        .iter()
        .map(|&y| basis.iter().map(|&x| a.coeff(g.mul(g.inv(x), y))).collect())
        .collect()
}

pub fn qg_inverse(a: &QGElement) -> Result<QGElement> {
    if a.is_zero() {
        return Err(Error::NotInvertible);
    }
    let s = a.support_subgroup();
    let g = a.group();
    if let Some(&gen) = s.members().iter().find(|&&x| g.element_order(x) as usize == s.order()) {
        return cyclic_inverse(a, &s, gen);
    }
    let basis = s.members();
    let m = regular_matrix_on(a, basis);
    let rhs: Vec<Rat> = basis.iter().map(|&y| if y == 0 { Rat::from_integer(1.into()) } else { Rat::zero() }).collect();
    let x = linalg::solve(&m, &rhs).ok_or(Error::NotInvertible)?;
    Ok(QGElement::from_coeffs(g, basis.iter().copied().zip(x)))
}

/// Inverse in `Q⟨h⟩ ≅ ⊕_{d | n} Q(ζ_d)`: with `β_d = a(ζ_d)^-1`, the
/// coefficient of `h^j` in `a^-1` is `(1/n) Σ_d Tr(β_d ζ_d^{-j})`.
fn cyclic_inverse(a: &QGElement, s: &Subgroup, h: Elem) -> Result<QGElement> {
    let g = a.group();
    let n = s.order();
    let mut log = vec![usize::MAX; g.order()];
    let mut powers = Vec::with_capacity(n);
    let mut y = 0;
    for j in 0..n {
        log[y] = j;
        powers.push(y);
        y = g.mul(y, h);
    }
    let mut coeffs = vec![Rat::zero(); n];
    for (x, c) in a.iter() {
        coeffs[log[x]] = c.clone();
    }
    let mut out = vec![Rat::zero(); n];
    for d in (1..=n).filter(|d| n % d == 0) {
        let mut counts = vec![Rat::zero(); d];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                counts[j % d] += c;
            }
        }
        let value = Cyclotomic::from_root_counts(d as u64, &counts);
        let beta = value.inv().map_err(|_| Error::NotInvertible)?;
        for (j, o) in out.iter_mut().enumerate() {
            let term = beta.mul(&Cyclotomic::root(d as u64, -(j as i64)));
            *o += term.trace();
        }
    }
    let scale = Rat::new(1.into(), n.into());
    Ok(QGElement::from_coeffs(
        g,
        out.into_iter().enumerate().map(|(j, c)| (powers[j], c * &scale)),
    ))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::FiniteGroup;
    use crate::qalgebra::hat;

    fn q(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn trivial_cases() {
        let g = Arc::new(
            FiniteGroup::from_permutations(3, &[vec![vec![1, 2]], vec![vec![1, 2, 3]]], 100).unwrap(),
        );
        assert!(qg_inverse(&QGElement::one(&g)).unwrap().is_one());
        for x in g.elements() {
            let inv = qg_inverse(&QGElement::from_elem(&g, x)).unwrap();
            assert_eq!(inv, QGElement::from_elem(&g, g.inv(x)));
        }
        for s in g.all_subgroups(100).unwrap() {
            if s.order() > 1 {
                assert_eq!(qg_inverse(&hat(&g, &s)).unwrap_err(), Error::NotInvertible);
            }
        }
        assert_eq!(qg_inverse(&QGElement::zero(&g)).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn cyclic_and_general_paths_agree() {
        let g = Arc::new(
            FiniteGroup::from_permutations(4, &[vec![vec![1, 2, 3, 4]], vec![vec![1, 2]]], 100).unwrap(),
        );
        let samples = [
            vec![(0, q(2, 1)), (1, q(1, 1))],
            vec![(0, q(1, 3)), (5, q(-2, 1)), (7, q(1, 2))],
            vec![(2, q(3, 1)), (3, q(1, 1)), (9, q(-1, 1)), (17, q(1, 5))],
        ];
        for terms in samples {
            let a = QGElement::from_coeffs(&g, terms);
            match qg_inverse(&a) {
                Ok(b) => {
                    assert!(a.mul(&b).unwrap().is_one());
                    assert!(b.mul(&a).unwrap().is_one());
                    // Cross-check against the full regular representation.
                    let m = regular_matrix(&a);
                    let rhs: Vec<Rat> = g.elements().map(|y| if y == 0 { q(1, 1) } else { q(0, 1) }).collect();
                    let full = linalg::solve(&m, &rhs).unwrap();
                    assert_eq!(QGElement::from_dense(&g, full), b);
                }
                Err(e) => {
                    assert_eq!(e, Error::NotInvertible);
                    assert!(linalg::rank(&regular_matrix(&a)) < g.order());
                }
            }
        }
    }

    #[test]
    fn cyclic_unit_inverse() {
        let g = Arc::new(FiniteGroup::from_fn(5, |a, b| (a + b) % 5).unwrap());
        // 1 - g - g^4 is a unit of Z C5 with inverse -1 - g^2 - g^3... up to sign checks.
        let a = QGElement::from_coeffs(&g, [(0, q(1, 1)), (1, q(-1, 1)), (4, q(-1, 1))]);
        let b = qg_inverse(&a).unwrap();
        assert!(b.is_integral());
        assert!(a.mul(&b).unwrap().is_one());
    }
}
