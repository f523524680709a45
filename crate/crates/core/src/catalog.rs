//! Built-in groups.
//!
//! Families are addressed by pattern: `C<n>` (cyclic), `D<n>` (dihedral of
//! order `2n`), `Dic<n>` (dicyclic of order `4n`) and `C<a>xC<b>`. Fixed
//! names cover small symmetric, alternating and elementary abelian groups,
//! `SL(2,3)`, and `paper-1000-86`, the group of order 1000 given by a
//! six-generator power-commutator presentation.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, PcPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
}

const NAMED: &[(&str, usize)] = &[
    ("Q8", 8),
    ("Q16", 16),
    ("S3", 6),
    ("S4", 24),
    ("A4", 12),
    ("A5", 60),
    ("SL(2,3)", 24),
    ("C2^2", 4),
    ("C2^3", 8),
    ("C2^4", 16),
    ("C3^2", 9),
    ("C5^2", 25),
    ("C3xS3", 18),
    ("A4xC2", 24),
    ("D4xC2", 16),
    ("Q8xC3", 24),
    ("C7:C3", 21),
    ("C3^2:C4", 36),
    ("paper-1000-86", 1000),
];

const PRODUCTS: &[(usize, usize)] = &[(2, 4), (2, 6), (2, 8), (3, 6), (4, 4), (2, 10), (3, 9), (4, 6), (2, 12)];

/// Every listed entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![];
    for n in 1..=60 {
        out.push(entry(format!("C{n}"), n));
    }
    for n in 3..=50 {
        out.push(entry(format!("D{n}"), 2 * n));
    }
    for n in 2..=25 {
        out.push(entry(format!("Dic{n}"), 4 * n));
    }
    for &(a, b) in PRODUCTS {
        out.push(entry(format!("C{a}xC{b}"), a * b));
    }
    for &(name, order) in NAMED {
        out.push(entry(name.to_string(), order));
    }
    out
}

fn entry(name: String, order: usize) -> CatalogEntry {
    CatalogEntry { name, order }
}

/// Builds a catalog group by name.
pub fn build(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(name.to_string());
    if let Some((a, b)) = name.split_once('x') {
        if let (Some(a), Some(b)) = (parse_family(a, "C"), parse_family(b, "C")) {
            return FiniteGroup::direct_product(&cyclic(a)?, &cyclic(b)?);
        }
    }
    if let Some(n) = parse_family(name, "Dic") {
        return if n >= 2 { dicyclic(n) } else { Err(unknown()) };
    }
    if let Some(n) = parse_family(name, "D") {
        return if n >= 3 { dihedral(n) } else { Err(unknown()) };
    }
    if let Some(n) = parse_family(name, "C") {
        return if n >= 1 { cyclic(n) } else { Err(unknown()) };
    }
    match name {
        "Q8" => dicyclic(2),
        "Q16" => dicyclic(4),
        "S3" => perm(3, &[&[&[1, 2]], &[&[1, 2, 3]]]),
        "S4" => perm(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]),
        "A4" => perm(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]),
        "A5" => perm(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]]),
        "SL(2,3)" => sl2_3(),
        "C2^2" => elementary(2, 2),
        "C2^3" => elementary(2, 3),
        "C2^4" => elementary(2, 4),
        "C3^2" => elementary(3, 2),
        "C5^2" => elementary(5, 2),
        "C3xS3" => FiniteGroup::direct_product(&cyclic(3)?, &build("S3")?),
        "A4xC2" => FiniteGroup::direct_product(&build("A4")?, &cyclic(2)?),
        "D4xC2" => FiniteGroup::direct_product(&dihedral(4)?, &cyclic(2)?),
        "Q8xC3" => FiniteGroup::direct_product(&dicyclic(2)?, &cyclic(3)?),
        "C7:C3" => perm(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]]),
        "C3^2:C4" => perm(6, &[&[&[1, 2, 3]], &[&[4, 5, 6]], &[&[1, 4, 2, 5], &[3, 6]]]),
        "paper-1000-86" => FiniteGroup::from_pc_presentation(&paper_1000_86()),
        _ => Err(unknown()),
    }
}

/// The presentation of the order-1000 example group: relative orders
/// `2,2,2,5,5,5`, `x1^2 = x2`, `x2^2 = x3`, and the commutator relations
/// below (all others trivial).
pub fn paper_1000_86() -> PcPresentation {
    presentation_1000(&[
        (5, 4, "x6"),
        (5, 1, "x4^2*x6^4"),
        (6, 1, "x6^2"),
        (4, 2, "x4*x6^2"),
        (6, 2, "x6^3"),
        (5, 2, "x5*x6^2"),
        (5, 3, "x5^3*x6^2"),
        (4, 3, "x4^3*x6^2"),
        (4, 1, "x4^-2*x5^3*x6^2"),
    ])
}

/// The uncorrected relation list, with
/// `[x5,x1] = x4` and `[x4,x1] = x4^-2*x5^3*x6^4`. It is inconsistent:
/// `x1` then squares to `-1` on `<x4,x5>` modulo `x6` while `x2` acts as `2`.
pub fn paper_1000_86_uncorrected() -> PcPresentation {
    presentation_1000(&[
        (5, 4, "x6"),
        (5, 1, "x4"),
        (6, 1, "x6^2"),
        (4, 2, "x4*x6^2"),
        (6, 2, "x6^3"),
        (5, 2, "x5*x6^2"),
        (5, 3, "x5^3*x6^2"),
        (4, 3, "x4^3*x6^2"),
        (4, 1, "x4^-2*x5^3*x6^4"),
    ])
}

fn presentation_1000(rels: &[(usize, usize, &str)]) -> PcPresentation {
    let mut p = PcPresentation::new(vec![2, 2, 2, 5, 5, 5])
        .with_power(1, "x2")
        .and_then(|p| p.with_power(2, "x3"))
        .expect("static presentation");
    for &(j, i, w) in rels {
        p = p.with_commutator(j, i, w).expect("static presentation");
    }
    p
}

fn parse_family(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn check_order(n: usize) -> Result<()> {
    if n > FiniteGroup::MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "group order".into(),
            cap: FiniteGroup::MAX_ORDER,
            got: n,
        });
    }
    Ok(())
}

fn powers_labels(n: usize, name: &str) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => name.to_string(),
            _ => format!("{name}^{i}"),
        })
        .collect()
}

/// `C_n = <x1>`, element `i` is `x1^i`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    check_order(n)?;
    let g = FiniteGroup::from_fn(n, |a, b| (a + b) % n)?;
    let gens = if n > 1 { vec![1] } else { vec![] };
    Ok(g.with_labels(powers_labels(n, "x1")).with_generators(gens))
}

/// `D_n = <r, s | r^n, s^2, s r s = r^-1>` of order `2n`; element
/// `i + n j` is `r^i s^j`. Named generators: `x1 = r`, `x2 = s`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    check_order(2 * n)?;
    let g = FiniteGroup::from_fn(2 * n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let k = if j == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((j + l) % 2)
    })?;
    let labels = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (0, 1) => "s".to_string(),
                (1, 0) => "r".to_string(),
                (_, 0) => format!("r^{i}"),
                (1, _) => "r*s".to_string(),
                _ => format!("r^{i}*s"),
            }
        })
        .collect();
    Ok(g.with_labels(labels).with_generators(vec![1, n]))
}

/// `Dic_n = <a, x | a^{2n}, x^2 = a^n, x^-1 a x = a^-1>` of order `4n`;
/// element `i + 2n j` is `a^i x^j`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    let m = 2 * n;
    check_order(2 * m)?;
    let g = FiniteGroup::from_fn(2 * m, |p, q| {
        let (i, j) = (p % m, p / m);
        let (k, l) = (q % m, q / m);
        // a^i x^j a^k x^l = a^{i ± k} x^{j + l}, with x^2 = a^n.
        let k = if j == 1 { (m - k) % m } else { k };
        let mut e = i + k;
        if j + l == 2 {
            e += n;
        }
        e % m + m * ((j + l) % 2)
    })?;
    let labels = (0..2 * m)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (0, 1) => "x".to_string(),
                (1, 0) => "a".to_string(),
                (_, 0) => format!("a^{i}"),
                (1, _) => "a*x".to_string(),
                _ => format!("a^{i}*x"),
            }
        })
        .collect();
    Ok(g.with_labels(labels).with_generators(vec![1, m]))
}

fn elementary(p: usize, rank: u32) -> Result<FiniteGroup> {
    let mut g = cyclic(p)?;
    for _ in 1..rank {
        g = FiniteGroup::direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

fn perm(degree: usize, gens: &[&[&[usize]]]) -> Result<FiniteGroup> {
    let gens: Vec<Vec<Vec<usize>>> = gens
        .iter()
        .map(|g| g.iter().map(|c| c.to_vec()).collect())
        .collect();
    FiniteGroup::from_permutations(degree, &gens, FiniteGroup::MAX_ORDER)
}

/// `SL(2,3)` as the closure of two matrices over `F_3`.
fn sl2_3() -> Result<FiniteGroup> {
    type M = [u8; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    let gens: [M; 2] = [[1, 1, 0, 1], [0, 2, 1, 0]];
    let mut elems: Vec<M> = vec![[1, 0, 0, 1]];
    let mut index: HashMap<M, usize> = HashMap::from([([1, 0, 0, 1], 0)]);
    let mut i = 0;
    while i < elems.len() {
        for s in &gens {
            let p = mul(&elems[i], s);
            if !index.contains_key(&p) {
                index.insert(p, elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let g = FiniteGroup::from_fn(elems.len(), |a, b| index[&mul(&elems[a], &elems[b])])?;
    let labels = elems
        .iter()
        .map(|m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]))
        .collect();
    Ok(g.with_labels(labels).with_generators(vec![index[&gens[0]], index[&gens[1]]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ClassKind;

    #[test]
    fn orders_match_entries() {
        for e in catalog().iter().filter(|e| e.order <= 200) {
            let g = build(&e.name).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
        assert!(matches!(build("nope"), Err(Error::UnknownGroup(_))));
        assert!(matches!(build("D2"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn small_identifications() {
        let q8 = build("Q8").unwrap();
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        let d4 = build("D4").unwrap();
        assert_eq!(d4.element_orders().iter().filter(|&&o| o == 2).count(), 5);
        let q16 = build("Q16").unwrap();
        assert_eq!(q16.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        let sl = build("SL(2,3)").unwrap();
        assert_eq!(sl.order(), 24);
        assert_eq!(sl.center().order(), 2);
        assert_eq!(build("C5").unwrap().conjugacy_partition(ClassKind::Real).len(), 3);
        assert_eq!(build("C2xC4").unwrap().exponent(), 4);
        assert_eq!(build("C3^2:C4").unwrap().order(), 36);
    }

    #[test]
    fn order_1000_group_structure() {
        let g = build("paper-1000-86").unwrap();
        assert_eq!(g.order(), 1000);
        // Normal Sylow 5-subgroup of order 125 with centre of order 5, and a
        // cyclic complement of order 8.
        let syl = g.subgroup_generated(&[
            g.eval_word_str("x4").unwrap(),
            g.eval_word_str("x5").unwrap(),
            g.eval_word_str("x6").unwrap(),
        ]);
        assert_eq!(syl.order(), 125);
        assert!(g.is_normal(&syl, &g.whole()));
        let z = g.subgroup_generated(&[g.eval_word_str("x6").unwrap()]);
        let c: Vec<usize> = syl
            .members()
            .iter()
            .copied()
            .filter(|&a| syl.generators().iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        assert_eq!(c, z.members());
        assert_eq!(g.element_order(g.eval_word_str("x1").unwrap()), 8);
    }

    #[test]
    fn printed_relations_rejected() {
        assert!(matches!(
            FiniteGroup::from_pc_presentation(&paper_1000_86_uncorrected()),
            Err(Error::InconsistentPresentation(_))
        ));
    }
}
