//! The centre `Z(QG)` and the dimension of its components `Z(QG)e`.

use std::sync::Arc;

use num_traits::Zero;

use super::QGElement;
use crate::error::{Error, Result};
use crate::field::Rat;
use crate::group::{ClassKind, FiniteGroup};
use crate::linalg;

/// Conjugacy class sums, ordered by least element.
pub fn center_basis(group: &Arc<FiniteGroup>) -> Vec<QGElement> {
    group
        .conjugacy_partition(ClassKind::Ordinary)
        .classes
        .iter()
        .map(|cl| QGElement::from_coeffs(group, cl.iter().map(|&x| (x, Rat::from_integer(1.into())))))
        .collect()
}

/// `dim_Q Z(QG)e` for a central idempotent `e`: the rank of the class sums
/// multiplied by `e`, each written in class coordinates.
pub fn center_component_dim(e: &QGElement) -> Result<usize> {
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let g = e.group();
    let part = g.conjugacy_partition(ClassKind::Ordinary);
    let reps: Vec<usize> = part.classes.iter().map(|c| c[0]).collect();
    let dense = e.to_dense();
    // (C e)(r) = Σ_{c ∈ C} e(c^-1 r); C e is central, so class representatives
    // determine it.
    let rows: Vec<Vec<Rat>> = part
        .classes
        .iter()
        .map(|cl| {
            reps.iter()
                .map(|&r| {
                    let mut acc = Rat::zero();
                    for &c in cl {
                        let v = &dense[g.mul(g.inv(c), r)];
                        if !v.is_zero() {
                            acc += v;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(linalg::rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{epsilon, hat};

    #[test]
    fn component_dimensions() {
        let s3 = Arc::new(
            FiniteGroup::from_permutations(3, &[vec![vec![1, 2]], vec![vec![1, 2, 3]]], 100).unwrap(),
        );
        assert_eq!(center_basis(&s3).len(), 3);
        assert_eq!(center_component_dim(&hat(&s3, &s3.whole())).unwrap(), 1);
        let a3 = s3.derived_subgroup(&s3.whole());
        let e = QGElement::one(&s3).sub(&hat(&s3, &a3)).unwrap();
        assert_eq!(center_component_dim(&e).unwrap(), 1);
        assert_eq!(center_component_dim(&QGElement::one(&s3)).unwrap(), 3);
        let t = s3.cyclic_subgroup(1);
        assert_eq!(center_component_dim(&hat(&s3, &t)).unwrap_err(), Error::NotCentral);
        let two = QGElement::one(&s3).scale(&Rat::from_integer(2.into()));
        assert_eq!(center_component_dim(&two).unwrap_err(), Error::NotIdempotent);

        let c4 = Arc::new(FiniteGroup::from_fn(4, |a, b| (a + b) % 4).unwrap());
        let eps = epsilon(&c4, &c4.whole(), &c4.trivial()).unwrap();
        assert_eq!(center_component_dim(&eps).unwrap(), 2);
    }
}
