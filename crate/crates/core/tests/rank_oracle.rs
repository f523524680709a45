//! Rank from pairs against class counting and, for cyclic groups, against
//! the Dirichlet unit count of the cyclotomic components.

use std::sync::Arc;

use zgunits::rank::{rank_oracle, rank_total};
use zgunits::shoda::complete_irredundant_set;
use zgunits::{catalog, AnalysisConfig};

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_gcd(*k, n) == 1).count() as u64
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// `QC_n = ⊕_{d | n} Q(ζ_d)`; each `d > 2` adds `φ(d)/2 - 1`.
fn cyclic_rank(n: u64) -> i64 {
    (3..=n).filter(|d| n % d == 0).map(|d| phi(d) as i64 / 2 - 1).sum()
}

#[test]
fn cyclic_groups_match_dirichlet() {
    for n in 1..=40u64 {
        let g = Arc::new(catalog::cyclic(n as usize).unwrap());
        let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        assert!(set.complete, "C{n}");
        let r = rank_total(&set).unwrap();
        assert_eq!(r.total, cyclic_rank(n), "C{n}");
        assert_eq!(rank_oracle(&g), cyclic_rank(n), "C{n}");
    }
}

#[test]
fn small_oracle_values() {
    assert_eq!(rank_oracle(&catalog::build("C5").unwrap()), 1);
    assert_eq!(rank_oracle(&catalog::build("Q8").unwrap()), 0);
    assert_eq!(rank_oracle(&catalog::build("C1").unwrap()), 0);
}

#[test]
fn catalog_up_to_64_agrees() {
    let mut checked = 0;
    for e in catalog::catalog().into_iter().filter(|e| e.order <= 64) {
        let g = Arc::new(catalog::build(&e.name).unwrap());
        let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        if !set.complete {
            continue;
        }
        let r = rank_total(&set).unwrap();
        assert_eq!(r.total, rank_oracle(&g), "{}", e.name);
        assert!(r.agree);
        checked += 1;
    }
    assert!(checked >= 25);
}
