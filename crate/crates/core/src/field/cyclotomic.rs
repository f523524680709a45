//! Elements of `Q(ζ_n)` in the power basis `1, ζ, ..., ζ^{φ(n)-1}`.
//!
//! Reduction uses the cyclotomic polynomial `Φ_n`, obtained by exact integer
//! division of `x^n - 1` by `Φ_d` for the proper divisors `d` of `n`. The
//! polynomial and the reduced powers `ζ^k` (`0 <= k < n`) are cached per
//! conductor.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::numbers::{euler_phi, format_rat, mobius, Rat};
use crate::error::{Error, Result};

struct Context {
    phi: usize,
    /// Monic `Φ_n`, low degree first (length `phi + 1`).
    poly: Vec<i64>,
    /// `ζ^k` reduced into the power basis, for `0 <= k < n`.
    powers: Vec<Vec<i64>>,
}

fn context(n: u64) -> Arc<Context> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Context>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache poisoned").get(&n) {
        return c.clone();
    }
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // Multiply by x and reduce the overflowing top coefficient.
        let top = cur[phi - 1];
        for d in (1..phi).rev() {
            cur[d] = cur[d - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for d in 0..phi {
                cur[d] = cur[d]
                    .checked_sub(top.checked_mul(poly[d]).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
    }
    let ctx = Arc::new(Context { phi, poly, powers });
    cache
        .lock()
        .expect("cache poisoned")
        .insert(n, ctx.clone());
    ctx
}

/// `Φ_n` with integer coefficients, low degree first.
fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = div_monic(&num, &context(d).poly);
        }
    }
    num
}

/// Exact division by a monic polynomial (remainder must vanish).
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Exact element of `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Rat>,
}

/// Field automorphism `ζ_n ↦ ζ_n^m` with `gcd(m, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisMap {
    n: u64,
    m: u64,
}

impl GaloisMap {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n == 0 || num_integer::gcd(m, n) != 1 {
            return Err(Error::BadExponent { m, n });
        }
        Ok(GaloisMap { n, m: m % n })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn exponent(&self) -> u64 {
        self.m
    }

    pub fn apply(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        if self.n % x.n != 0 {
            return Err(Error::PreconditionFailed(format!(
                "Galois map of Q(ζ_{}) cannot act on Q(ζ_{})",
                self.n, x.n
            )));
        }
        let n = x.n;
        let m = self.m % n;
        let mut counts = vec![Rat::zero(); n as usize];
        for (k, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                counts[((k as u64 * m) % n) as usize] += c;
            }
        }
        Ok(Cyclotomic::from_root_counts(n, &counts))
    }
}

/// `Gal(Q(ζ_n)/Q)`, one map per residue coprime to `n`, in increasing order.
pub fn galois_group(n: u64) -> Vec<GaloisMap> {
    (1..=n)
        .filter(|&m| num_integer::gcd(m, n) == 1)
        .map(|m| GaloisMap { n, m: m % n })
        .collect()
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let phi = context(n).phi;
        Cyclotomic {
            n,
            coeffs: vec![Rat::zero(); phi],
        }
    }

    pub fn rational(n: u64, r: Rat) -> Self {
        let mut z = Cyclotomic::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn one(n: u64) -> Self {
        Cyclotomic::rational(n, Rat::one())
    }

    /// `ζ_n^k`.
    pub fn root(n: u64, k: i64) -> Self {
        let ctx = context(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            coeffs: ctx.powers[k].iter().map(|&c| Rat::from_integer(c.into())).collect(),
        }
    }

    /// `Σ counts[k] ζ_n^k` over all residues `k`.
    pub fn from_root_counts(n: u64, counts: &[Rat]) -> Self {
        let ctx = context(n);
        let mut coeffs = vec![Rat::zero(); ctx.phi];
        for (k, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (d, &p) in ctx.powers[k % n as usize].iter().enumerate() {
                if p != 0 {
                    coeffs[d] += c * Rat::from_integer(p.into());
                }
            }
        }
        Cyclotomic { n, coeffs }
    }

    /// Like [`Cyclotomic::from_root_counts`] with integer counts, divided by `den`.
    pub fn from_big_root_counts(n: u64, counts: &[BigInt], den: &BigInt) -> Self {
        let ctx = context(n);
        let mut acc = vec![BigInt::zero(); ctx.phi];
        for (k, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (d, &p) in ctx.powers[k % n as usize].iter().enumerate() {
                if p != 0 {
                    acc[d] += c * p;
                }
            }
        }
        Cyclotomic {
            n,
            coeffs: acc.into_iter().map(|c| Rat::new(c, den.clone())).collect(),
        }
    }

    /// Like [`Cyclotomic::from_root_counts`] for integer multiplicities.
    pub fn from_int_root_counts(n: u64, counts: &[i64]) -> Self {
        let ctx = context(n);
        let mut acc = vec![0i64; ctx.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (d, &p) in ctx.powers[k % n as usize].iter().enumerate() {
                acc[d] += c * p;
            }
        }
        Cyclotomic {
            n,
            coeffs: acc.into_iter().map(|c| Rat::from_integer(c.into())).collect(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Coefficients on `1, ζ, ..., ζ^{φ(n)-1}`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` in `Q(ζ_big)` for a multiple `big` of the conductor.
    pub fn lift(&self, big: u64) -> Cyclotomic {
        assert!(big % self.n == 0, "{} does not divide {}", self.n, big);
        if big == self.n {
            return self.clone();
        }
        let step = big / self.n;
        let mut counts = vec![Rat::zero(); big as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            counts[(k as u64 * step) as usize] = c.clone();
        }
        Cyclotomic::from_root_counts(big, &counts)
    }

    fn aligned(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let n = num_integer::lcm(self.n, other.n);
        (self.lift(n), other.lift(n))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        let n = a.n as usize;
        let mut counts = vec![Rat::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    counts[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic::from_root_counts(a.n, &counts)
    }

    /// Inverse via the norm: `x^{-1} = (∏_{σ≠1} σ(x)) / N(x)`.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut others = Cyclotomic::one(self.n);
        for s in galois_group(self.n).into_iter().skip(1) {
            others = others.mul(&s.apply(self)?);
        }
        let norm = self
            .mul(&others)
            .as_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(others.scale(&(Rat::one() / norm)))
    }

    /// Complex conjugation (`ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Cyclotomic {
        GaloisMap {
            n: self.n,
            m: (self.n - 1) % self.n.max(1),
        }
        .apply(self)
        .expect("conjugation is defined on its own field")
    }

    pub fn is_real(&self) -> bool {
        self.n <= 2 || *self == self.conj()
    }

    /// `Σ_σ σ(x)` over `Gal(Q(ζ_n)/Q)`, via Ramanujan sums
    /// `Tr(ζ^k) = μ(n/g) φ(n) / φ(n/g)` with `g = gcd(k, n)`.
    pub fn trace(&self) -> Rat {
        let n = self.n;
        let mut acc = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = num_integer::gcd(k as u64, n);
            let t = mobius(n / g) * (euler_phi(n) / euler_phi(n / g)) as i64;
            acc += c * Rat::from_integer(t.into());
        }
        acc
    }

    /// Values at every primitive `n`-th root of unity `e^{2πi m/n}`, `m`
    /// coprime to `n` in increasing order (double precision).
    pub fn complex_embeddings(&self) -> Vec<Complex64> {
        let coeffs: Vec<f64> = self.coeffs.iter().map(rat_to_f64).collect();
        galois_group(self.n)
            .into_iter()
            .map(|s| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(k, &c)| {
                        let ang = 2.0 * std::f64::consts::PI * ((k as u64 * s.m) % self.n) as f64
                            / self.n as f64;
                        Complex64::from_polar(c, ang)
                    })
                    .sum()
            })
            .collect()
    }

    /// Coefficients keyed by basis exponent, zero entries omitted.
    pub fn sparse_coeffs(&self) -> BTreeMap<usize, String> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, format_rat(c)))
            .collect()
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Scale huge fractions down before converting.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let a = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let mag = format_rat(&abs);
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, k),
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{sep}{mag}")?,
                (_, true) => write!(f, "{sep}{root}")?,
                _ => write!(f, "{sep}{mag}*{root}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        let coeffs: BTreeMap<String, String> = self
            .sparse_coeffs()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        map.serialize_entry("coeffs", &coeffs)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(a.into(), b.into())
    }

    #[test]
    fn trivial_conductor() {
        assert_eq!(Cyclotomic::root(1, 0), Cyclotomic::one(1));
        assert_eq!(euler_phi(1), 1);
        assert_eq!(galois_group(1).len(), 1);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root(4, 1);
        assert_eq!(i.mul(&i), Cyclotomic::rational(4, r(-1, 1)));
        assert!(!i.is_real());
    }

    #[test]
    fn vanishing_sum_of_fifth_roots() {
        let s = (0..5).fold(Cyclotomic::zero(5), |acc, k| acc.add(&Cyclotomic::root(5, k)));
        assert!(s.is_zero());
    }

    #[test]
    fn prime_basis_reduction() {
        for p in [3u64, 5, 7, 11, 13] {
            let top = Cyclotomic::root(p, p as i64 - 1);
            assert_eq!(top.coeffs().len() as u64, p - 1);
            assert!(top.coeffs().iter().all(|c| *c == r(-1, 1)));
        }
    }

    #[test]
    fn galois_maps() {
        let z = Cyclotomic::root(5, 1);
        assert_eq!(GaloisMap::new(5, 1).unwrap().apply(&z).unwrap(), z);
        assert_eq!(
            GaloisMap::new(5, 4).unwrap().apply(&z).unwrap(),
            Cyclotomic::root(5, 4)
        );
        let total = galois_group(5)
            .iter()
            .fold(Cyclotomic::zero(5), |acc, s| acc.add(&s.apply(&z).unwrap()));
        assert_eq!(total, Cyclotomic::rational(5, r(-1, 1)));
        assert!(GaloisMap::new(6, 3).is_err());
        assert_eq!(galois_group(12).len(), 4);
    }

    #[test]
    fn realness_and_embeddings() {
        let x = Cyclotomic::root(5, 1).add(&Cyclotomic::root(5, 4));
        assert!(x.is_real());
        let e = Cyclotomic::root(3, 1).complex_embeddings();
        assert_eq!(e.len(), 2);
        for (v, sign) in e.iter().zip([1.0, -1.0]) {
            assert!((v.re + 0.5).abs() < 1e-12);
            assert!((v.im - sign * 0.75f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_and_trace() {
        let x = Cyclotomic::root(7, 1).add(&Cyclotomic::rational(7, r(2, 3)));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), Cyclotomic::one(7));
        assert_eq!(Cyclotomic::zero(7).inv().unwrap_err(), Error::DivisionByZero);
        for n in [1u64, 4, 6, 8, 9, 12, 15] {
            for k in 0..n as i64 {
                let z = Cyclotomic::root(n, k);
                let explicit = galois_group(n)
                    .iter()
                    .fold(Cyclotomic::zero(n), |acc, s| acc.add(&s.apply(&z).unwrap()));
                assert_eq!(explicit.as_rational(), Some(z.trace()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn mixed_conductors() {
        // ζ_4 · ζ_3 = ζ_12^{3+4}
        let p = Cyclotomic::root(4, 1).mul(&Cyclotomic::root(3, 1));
        assert_eq!(p, Cyclotomic::root(12, 7));
        assert_eq!(Cyclotomic::root(6, 2), Cyclotomic::root(3, 1));
        assert_eq!(format!("{}", Cyclotomic::root(5, 2).scale(&r(-1, 2))), "-1/2*z5^2");
    }
}
