//! The nine pairs of the order-1000 group with a PC presentation.

use std::sync::Arc;

use zgunits::io::PairsFile;
use zgunits::rank::{rank_oracle, rank_total, verify_center_degree};
use zgunits::shoda::{complete_irredundant_set, PairSet, PairStatus};
use zgunits::{catalog, AnalysisConfig};

fn pair_set() -> PairSet {
    let g = Arc::new(catalog::build("paper-1000-86").unwrap());
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/paper-1000-86-pairs.json");
    let cands = PairsFile::parse(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .candidates(&g)
        .unwrap();
    complete_irredundant_set(&g, Some(&cands), &AnalysisConfig::default()).unwrap()
}

#[test]
fn group_shape() {
    let g = catalog::build("paper-1000-86").unwrap();
    assert_eq!(g.order(), 1000);
    assert!(!g.is_abelian());
    assert_eq!(rank_oracle(&g), 1);
}

#[test]
fn nine_pairs_terms_and_total() {
    let set = pair_set();
    assert!(set.complete);
    assert_eq!(set.pairs.len(), 9);
    // [H:K], [C_i:H_i] over the proper chain levels, k, strong?
    let expected: [(u64, &[usize], u8, bool); 9] = [
        (1, &[1], 1, true),
        (2, &[1], 1, true),
        (4, &[1], 2, true),
        (8, &[1], 2, true),
        (5, &[4], 1, true),
        (5, &[4], 1, true),
        (5, &[4], 1, true),
        (5, &[1, 1, 4], 1, false),
        (10, &[1, 1, 4], 1, false),
    ];
    let report = rank_total(&set).unwrap();
    for ((p, t), (idx, chain, k, strong)) in set.pairs.iter().zip(&report.terms).zip(expected) {
        assert_eq!(t.index_hk, idx);
        assert_eq!(t.chain_indices, chain);
        assert_eq!(t.k, k);
        let want = if strong { PairStatus::Strong } else { PairStatus::GeneralizedStrong };
        assert_eq!(p.status, want);
        assert!(verify_center_degree(p).unwrap());
    }
    let terms: Vec<i64> = report.terms.iter().map(|t| t.term).collect();
    assert_eq!(terms, [0, 0, 0, 1, 0, 0, 0, 0, 0]);
    assert_eq!(report.total, 1);
    assert!(report.agree);
}

#[test]
fn uncorrected_presentation_is_rejected() {
    let pres = catalog::paper_1000_86_uncorrected();
    assert!(zgunits::FiniteGroup::from_pc_presentation(&pres).is_err());
}
