//! Linear characters with prescribed kernel, their induced characters, and
//! the primitive central idempotent `e_Q(λ^G)`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{euler_phi, galois_group, mobius, Cyclotomic, Rat};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::qalgebra::QGElement;

/// A linear character `λ` of `H` with kernel `K`, sending the chosen
/// generator of `H/K` to `ζ_n^t`, `n = [H:K]`.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    h: Subgroup,
    k: Subgroup,
    index: u64,
    t: u64,
    generator: Elem,
    /// Exponent `j` with `x ∈ generator^j K`, for `x ∈ H`.
    coset_log: Vec<Option<u32>>,
}

impl LinearCharacter {
    pub fn new(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Self> {
        Self::with_exponent(group, h, k, 1)
    }

    /// The generator of `H/K` is the least element of `H` whose coset
    /// generates the quotient.
    pub fn with_exponent(group: &FiniteGroup, h: &Subgroup, k: &Subgroup, t: u64) -> Result<Self> {
        if !group.is_normal(k, h) {
            return Err(Error::NotNormal("kernel is not normal in H".into()));
        }
        let index = (h.order() / k.order()) as u64;
        if num_integer::gcd(t, index) != 1 {
            return Err(Error::BadExponent { m: t, n: index });
        }
        let generator = h
            .members()
            .iter()
            .copied()
            .find(|&x| group.coset_order(x, k) as u64 == index)
            .ok_or_else(|| Error::NotShodaPair("H/K is not cyclic".into()))?;
        let mut coset_log = vec![None; group.order()];
        let mut y = 0;
        for j in 0..index {
            for &z in k.members() {
                coset_log[group.mul(y, z)] = Some(j as u32);
            }
            y = group.mul(y, generator);
        }
        Ok(LinearCharacter {
            h: h.clone(),
            k: k.clone(),
            index,
            t: t % index.max(1),
            generator,
            coset_log,
        })
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    /// `[H:K]`, the conductor of the values.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn exponent(&self) -> u64 {
        self.t
    }

    pub fn generator_image(&self) -> Cyclotomic {
        Cyclotomic::root(self.index, self.t as i64)
    }

    /// `λ(x) = ζ_n^{log(x)}`, or `None` outside `H`.
    pub fn log(&self, x: Elem) -> Option<u64> {
        self.coset_log[x].map(|j| (j as u64 * self.t) % self.index)
    }

    pub fn value(&self, x: Elem) -> Option<Cyclotomic> {
        self.log(x).map(|e| Cyclotomic::root(self.index, e as i64))
    }

    /// `λ^G` on every element of `G`.
    pub fn induce(&self, group: &FiniteGroup) -> InducedCharacter {
        let n = self.index as usize;
        let mut counts = vec![vec![0i32; n]; group.order()];
        for x in group.right_transversal(&self.h, &group.whole()) {
            let xi = group.inv(x);
            for (g, row) in counts.iter_mut().enumerate() {
                if let Some(e) = self.log(group.mul(group.mul(x, g), xi)) {
                    row[e as usize] += 1;
                }
            }
        }
        InducedCharacter {
            conductor: self.index,
            h_order: self.h.order(),
            counts,
        }
    }
}

/// Values of `λ^G`, each stored as multiplicities of the roots `ζ_n^j`.
#[derive(Clone, Debug)]
pub struct InducedCharacter {
    conductor: u64,
    h_order: usize,
    counts: Vec<Vec<i32>>,
}

impl InducedCharacter {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `λ^G(1) = [G:H]`.
    pub fn degree(&self) -> u64 {
        self.counts[0].iter().map(|&c| c as u64).sum()
    }

    pub fn root_counts(&self, g: Elem) -> &[i32] {
        &self.counts[g]
    }

    pub fn value(&self, g: Elem) -> Cyclotomic {
        let c: Vec<i64> = self.counts[g].iter().map(|&x| x as i64).collect();
        Cyclotomic::from_int_root_counts(self.conductor, &c)
    }

    pub fn values(&self) -> Vec<Cyclotomic> {
        (0..self.counts.len()).map(|g| self.value(g)).collect()
    }

    /// Exact realness of every value.
    pub fn is_real(&self) -> bool {
        let n = self.conductor as usize;
        (0..self.counts.len()).all(|g| {
            let row = &self.counts[g];
            let conj: Vec<i64> = (0..n).map(|j| row[(n - j) % n] as i64).collect();
            let orig: Vec<i64> = row.iter().map(|&x| x as i64).collect();
            Cyclotomic::from_int_root_counts(self.conductor, &orig)
                == Cyclotomic::from_int_root_counts(self.conductor, &conj)
        })
    }

    /// Number of `σ ∈ Gal(Q(ζ_n)/Q)` fixing every value.
    pub fn galois_stabilizer_size(&self) -> usize {
        let values = self.values();
        galois_group(self.conductor)
            .into_iter()
            .filter(|s| values.iter().all(|v| s.apply(v).expect("same conductor") == *v))
            .count()
    }

    /// `Tr_{Q(ζ_n)/Q} λ^G(g)`, via Ramanujan sums on the root counts.
    pub fn full_trace(&self, g: Elem) -> i64 {
        let n = self.conductor;
        let phi = euler_phi(n) as i64;
        self.counts[g]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let d = n / num_integer::gcd(j as u64, n);
                c as i64 * mobius(d) * phi / euler_phi(d) as i64
            })
            .sum()
    }

    /// `e_Q(λ^G) = (1/|H|) Σ_σ Σ_g σ(λ^G(g)) g^{-1}`, the outer sum over
    /// `Gal(Q(λ^G)/Q)`. The full trace over `Q(ζ_n)` counts each of those
    /// automorphisms `|stabilizer|` times.
    pub fn pci(&self, group: &Arc<FiniteGroup>) -> QGElement {
        let stab = self.galois_stabilizer_size() as i64;
        let den = Rat::from_integer((self.h_order as i64 * stab).into());
        let mut dense = vec![Rat::zero(); group.order()];
        for g in group.elements() {
            let tr = self.full_trace(g);
            if tr != 0 {
                dense[group.inv(g)] = Rat::from_integer(tr.into()) / &den;
            }
        }
        QGElement::from_dense(group, dense)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::hat;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutations(3, &[vec![vec![1, 2]], vec![vec![1, 2, 3]]], 100).unwrap(),
        )
    }

    #[test]
    fn induced_values() {
        let g = s3();
        let whole = g.whole();
        let triv = LinearCharacter::new(&g, &whole, &whole).unwrap().induce(&g);
        assert!(g.elements().all(|x| triv.value(x) == Cyclotomic::one(1)));

        let a3 = g.derived_subgroup(&whole);
        let lam = LinearCharacter::new(&g, &a3, &g.trivial()).unwrap();
        let ind = lam.induce(&g);
        let r = g.elements().find(|&x| g.label(x) == "(1,2,3)").unwrap();
        let expect = Cyclotomic::root(3, 1).add(&Cyclotomic::root(3, 2));
        assert_eq!(ind.value(r), expect);
        assert_eq!(ind.degree(), 2);
        let t = g.elements().find(|&x| g.label(x) == "(1,2)").unwrap();
        assert!(ind.value(t).is_zero());
        assert!(ind.is_real());
    }

    #[test]
    fn pci_examples() {
        let g = s3();
        let whole = g.whole();
        let a3 = g.derived_subgroup(&whole);
        let pci = |h: &Subgroup, k: &Subgroup| LinearCharacter::new(&g, h, k).unwrap().induce(&g).pci(&g);
        assert_eq!(pci(&whole, &whole), hat(&g, &whole));
        let one = QGElement::one(&g);
        assert_eq!(pci(&a3, &g.trivial()), one.sub(&hat(&g, &a3)).unwrap());
        assert_eq!(pci(&whole, &a3), hat(&g, &a3).sub(&hat(&g, &whole)).unwrap());
    }

    #[test]
    fn pci_independent_of_generator_image() {
        let c5 = Arc::new(FiniteGroup::from_fn(5, |a, b| (a + b) % 5).unwrap());
        let whole = c5.whole();
        let base = LinearCharacter::new(&c5, &whole, &c5.trivial()).unwrap().induce(&c5).pci(&c5);
        for t in 2..5 {
            let other = LinearCharacter::with_exponent(&c5, &whole, &c5.trivial(), t)
                .unwrap()
                .induce(&c5)
                .pci(&c5);
            assert_eq!(base, other);
        }
        assert!(LinearCharacter::with_exponent(&c5, &whole, &c5.trivial(), 5).is_err());
        let ind = LinearCharacter::new(&c5, &whole, &c5.trivial()).unwrap().induce(&c5);
        assert!(!ind.is_real());
        assert_eq!(ind.galois_stabilizer_size(), 1);
    }
}
