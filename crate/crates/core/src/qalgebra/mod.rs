//! Sparse elements of the rational and integral group rings `QG` and `ZG`.

mod center;
mod idempotents;
mod inverse;

pub use center::{center_basis, center_component_dim};
pub use idempotents::{centralizer_of, e_sum_conjugates, epsilon, hat};
pub use inverse::{qg_inverse, regular_matrix};
pub(crate) use idempotents::sum_of_conjugates;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{format_rat, Rat};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Element of `QG`; zero coefficients are never stored.
#[derive(Clone)]
pub struct QGElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<Elem, Rat>,
}

impl QGElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        QGElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::from_elem(group, 0)
    }

    pub fn from_elem(group: &Arc<FiniteGroup>, x: Elem) -> Self {
        let mut e = Self::zero(group);
        e.coeffs.insert(x, Rat::one());
        e
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: impl IntoIterator<Item = (Elem, Rat)>) -> Self {
        let mut e = Self::zero(group);
        for (x, c) in coeffs {
            assert!(x < group.order(), "element index out of range");
            e.add_term(x, &c);
        }
        e
    }

    /// Builds from a dense coefficient vector indexed by element.
    pub fn from_dense(group: &Arc<FiniteGroup>, dense: Vec<Rat>) -> Self {
        assert_eq!(dense.len(), group.order());
        QGElement {
            group: group.clone(),
            coeffs: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `Σ_{x ∈ S} x` (not normalised).
    pub fn subgroup_sum(group: &Arc<FiniteGroup>, s: &Subgroup) -> Self {
        Self::from_coeffs(group, s.members().iter().map(|&x| (x, Rat::one())))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, x: Elem) -> Rat {
        self.coeffs.get(&x).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, &Rat)> {
        self.coeffs.iter().map(|(&x, c)| (x, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut d = vec![Rat::zero(); self.group.order()];
        for (&x, c) in &self.coeffs {
            d[x] = c.clone();
        }
        d
    }

    fn add_term(&mut self, x: Elem, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(x).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    fn check_same(&self, other: &QGElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &QGElement) -> Result<QGElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&x, c) in &other.coeffs {
            out.add_term(x, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QGElement) -> Result<QGElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QGElement {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, r: &Rat) -> QGElement {
        if r.is_zero() {
            return QGElement::zero(&self.group);
        }
        QGElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(&x, c)| (x, c * r)).collect(),
        }
    }

    /// Exact convolution. Both sides are cleared to integers first; the
    /// accumulation runs in `i128` when a coefficient bound allows it.
    pub fn mul(&self, other: &QGElement) -> Result<QGElement> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(QGElement::zero(&self.group));
        }
        let (da, a) = integerize(&self.coeffs);
        let (db, b) = integerize(&other.coeffs);
        let g = &*self.group;
        let n = g.order();
        let max_bits = |v: &[(Elem, BigInt)]| v.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let len_bits = (a.len().min(b.len()) as u64 + 1).ilog2() as u64 + 1;
        let den_int = da * db;
        let den = Rat::from_integer(den_int.clone());
        let integral = den_int.is_one();
        let dense: Vec<Rat> = if max_bits(&a) + max_bits(&b) + len_bits <= 125 {
            let a: Vec<(Elem, i128)> = a.iter().map(|(x, c)| (*x, to_i128(c))).collect();
            let b: Vec<(Elem, i128)> = b.iter().map(|(x, c)| (*x, to_i128(c))).collect();
            let mut acc = vec![0i128; n];
            for &(x, cx) in &a {
                let row = x * n;
                for &(y, cy) in &b {
                    acc[g.table_entry(row + y)] += cx * cy;
                }
            }
            acc.into_iter()
                .map(|v| {
                    if v == 0 {
                        Rat::zero()
                    } else if integral {
                        Rat::from_integer(BigInt::from(v))
                    } else {
                        Rat::from_integer(BigInt::from(v)) / &den
                    }
                })
                .collect()
        } else {
            let mut acc = vec![BigInt::zero(); n];
            for (x, cx) in &a {
                let row = x * n;
                for (y, cy) in &b {
                    acc[g.table_entry(row + y)] += cx * cy;
                }
            }
            acc.into_iter()
                .map(|v| {
                    if v.is_zero() {
                        Rat::zero()
                    } else if integral {
                        Rat::from_integer(v)
                    } else {
                        Rat::from_integer(v) / &den
                    }
                })
                .collect()
        };
        Ok(QGElement::from_dense(&self.group, dense))
    }

    /// `x^e` by repeated squaring (`e >= 0`).
    pub fn pow(&self, mut e: u64) -> QGElement {
        let mut base = self.clone();
        let mut acc = QGElement::one(&self.group);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same group");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same group");
            }
        }
        acc
    }

    /// `g^-1 · self · g`.
    pub fn conj(&self, g: Elem) -> QGElement {
        let grp = &*self.group;
        QGElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(&x, c)| (grp.conj(x, g), c.clone())).collect(),
        }
    }

    /// Whether `g^-1 · self · g == self`, without building the conjugate.
    pub fn is_fixed_by(&self, g: Elem) -> bool {
        let grp = &*self.group;
        self.coeffs
            .iter()
            .all(|(&x, c)| self.coeffs.get(&grp.conj(x, g)) == Some(c))
    }

    /// Commutes with every element of `G`.
    pub fn is_central(&self) -> bool {
        self.group.generating_set().iter().all(|&g| self.is_fixed_by(g))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// Coefficient sum.
    pub fn augmentation(&self) -> Rat {
        self.coeffs.values().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// The subgroup generated by the support.
    pub fn support_subgroup(&self) -> Subgroup {
        let s: Vec<Elem> = self.support().collect();
        self.group.subgroup_generated(&s)
    }

    /// Coefficients keyed by element index as decimal strings.
    pub fn sparse_strings(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(x, c)| (x.to_string(), format_rat(c)))
            .collect()
    }
}

pub fn are_orthogonal(a: &QGElement, b: &QGElement) -> Result<bool> {
    Ok(a.mul(b)?.is_zero() && b.mul(a)?.is_zero())
}

fn integerize(coeffs: &BTreeMap<Elem, Rat>) -> (BigInt, Vec<(Elem, BigInt)>) {
    let den = coeffs
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|(&x, c)| (x, c.numer() * (&den / c.denom())))
        .collect();
    (den, ints)
}

fn to_i128(x: &BigInt) -> i128 {
    i128::try_from(x).expect("bit bound checked")
}

impl PartialEq for QGElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for QGElement {}

impl fmt::Debug for QGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QGElement({self})")
    }
}

impl fmt::Display for QGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&x, c) in &self.coeffs {
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let abs = c.abs();
            let label = self.group.label(x);
            if x == 0 {
                write!(f, "{sep}{}", format_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{sep}{label}")?;
            } else {
                write!(f, "{sep}{}*{label}", format_rat(&abs))?;
            }
        }
        Ok(())
    }
}

impl Serialize for QGElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &self.sparse_strings())?;
        map.end()
    }
}

/// Element of `ZG`: a [`QGElement`] whose coefficients are all integers.
#[derive(Clone, PartialEq, Eq)]
pub struct ZGElement(QGElement);

impl ZGElement {
    pub fn try_from_qg(a: QGElement) -> Result<Self> {
        if a.is_integral() {
            Ok(ZGElement(a))
        } else {
            Err(Error::PreconditionFailed("element has non-integral coefficients".into()))
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        ZGElement(QGElement::one(group))
    }

    pub fn from_elem(group: &Arc<FiniteGroup>, x: Elem) -> Self {
        ZGElement(QGElement::from_elem(group, x))
    }

    pub fn from_int_coeffs(group: &Arc<FiniteGroup>, coeffs: impl IntoIterator<Item = (Elem, BigInt)>) -> Self {
        ZGElement(QGElement::from_coeffs(
            group,
            coeffs.into_iter().map(|(x, c)| (x, Rat::from_integer(c))),
        ))
    }

    pub fn as_qg(&self) -> &QGElement {
        &self.0
    }

    pub fn into_qg(self) -> QGElement {
        self.0
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.0.group()
    }

    pub fn coeff(&self, x: Elem) -> BigInt {
        self.0.coeff(x).to_integer()
    }

    pub fn mul(&self, other: &ZGElement) -> Result<ZGElement> {
        Ok(ZGElement(self.0.mul(&other.0)?))
    }

    pub fn pow(&self, e: u64) -> ZGElement {
        ZGElement(self.0.pow(e))
    }

    pub fn conj(&self, g: Elem) -> ZGElement {
        ZGElement(self.0.conj(g))
    }

    pub fn augmentation(&self) -> BigInt {
        self.0.augmentation().to_integer()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Largest coefficient size in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.0.iter().map(|(_, c)| c.numer().bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for ZGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZGElement({})", self.0)
    }
}

impl fmt::Display for ZGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ZGElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutations(3, &[vec![vec![1, 2]], vec![vec![1, 2, 3]]], 100).unwrap(),
        )
    }

    fn random_element(g: &Arc<FiniteGroup>, rng: &mut impl Rng) -> QGElement {
        let mut terms = vec![];
        for x in 0..g.order() {
            if rng.gen_bool(0.6) {
                terms.push((x, Rat::new(rng.gen_range(-5..6).into(), rng.gen_range(1..4).into())));
            }
        }
        QGElement::from_coeffs(g, terms)
    }

    /// Convolution straight from the definition.
    fn naive_mul(a: &QGElement, b: &QGElement) -> QGElement {
        let g = a.group();
        let mut d = vec![Rat::zero(); g.order()];
        for x in g.elements() {
            for y in g.elements() {
                d[g.mul(x, y)] += a.coeff(x) * b.coeff(y);
            }
        }
        QGElement::from_dense(g, d)
    }

    #[test]
    fn ring_axioms_on_samples() {
        let g = s3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = random_element(&g, &mut rng);
            let b = random_element(&g, &mut rng);
            let c = random_element(&g, &mut rng);
            assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(a.conj(x).conj(y), a.conj(g.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let g = s3();
        let big = Rat::from_integer(BigInt::from(1u8) << 100);
        let a = QGElement::from_coeffs(&g, [(1, big.clone()), (2, Rat::one())]);
        let b = QGElement::from_coeffs(&g, [(3, big), (0, Rat::new(1.into(), 3.into()))]);
        assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
    }

    #[test]
    fn group_mismatch() {
        let a = QGElement::one(&s3());
        let b = QGElement::one(&s3());
        assert_eq!(a.mul(&b).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn zg_wrapper() {
        let g = s3();
        let half = QGElement::from_coeffs(&g, [(1, Rat::new(1.into(), 2.into()))]);
        assert!(ZGElement::try_from_qg(half).is_err());
        let u = ZGElement::from_int_coeffs(&g, [(0, BigInt::from(2)), (1, BigInt::from(-1))]);
        assert_eq!(u.augmentation(), BigInt::one());
        assert_eq!(u.pow(3), u.mul(&u).unwrap().mul(&u).unwrap());
    }
}
