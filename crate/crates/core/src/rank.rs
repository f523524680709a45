//! Rank of the group of central units of `ZG` from a complete and
//! irredundant set of generalized strong Shoda pairs:
//! `Σ_{(H,K)} (φ([H:K]) / (k · ∏ [C_i : H_i]) - 1)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::euler_phi;
use crate::group::{ClassKind, FiniteGroup, Subgroup};
use crate::qalgebra::center_component_dim;
use crate::shoda::{ChainOrigin, PairSet, PairStatus, ShodaPair};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTerm {
    pub h_order: usize,
    pub k_order: usize,
    pub h_generators: Vec<String>,
    pub k_generators: Vec<String>,
    pub status: PairStatus,
    pub chain_origin: ChainOrigin,
    pub chain_orders: Vec<usize>,
    pub index_hk: u64,
    pub chain_indices: Vec<usize>,
    pub k: u8,
    pub term: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    #[serde(rename = "pairs")]
    pub terms: Vec<RankTerm>,
    pub total: i64,
    #[serde(rename = "oracle")]
    pub oracle_total: i64,
    pub agree: bool,
}

/// 1 when `λ^G` is real-valued, 2 otherwise.
pub fn k_of_pair(pair: &ShodaPair) -> u8 {
    if pair.induced.is_real() {
        1
    } else {
        2
    }
}

fn chain_of(pair: &ShodaPair) -> Result<&crate::shoda::StrongInductiveChain> {
    pair.chain.as_ref().ok_or_else(|| {
        Error::MissingChain(format!(
            "pair with |H| = {}, |K| = {}",
            pair.h.order(),
            pair.k.order()
        ))
    })
}

fn labels(group: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.generators().iter().map(|&x| group.label(x)).collect()
}

pub fn rank_term(group: &FiniteGroup, pair: &ShodaPair) -> Result<RankTerm> {
    let chain = chain_of(pair)?;
    let index = pair.index();
    let phi = euler_phi(index);
    let k = k_of_pair(pair);
    let divisor = k as u64 * chain.index_product();
    if phi % divisor != 0 {
        return Err(Error::DivisibilityViolation { index, phi, divisor });
    }
    Ok(RankTerm {
        h_order: pair.h.order(),
        k_order: pair.k.order(),
        h_generators: labels(group, &pair.h),
        k_generators: labels(group, &pair.k),
        status: pair.status,
        chain_origin: pair.chain_origin.clone(),
        chain_orders: chain.step_orders(),
        index_hk: index,
        chain_indices: chain.centralizer_indices(),
        k,
        term: (phi / divisor) as i64 - 1,
    })
}

pub fn rank_total(set: &PairSet) -> Result<RankReport> {
    if !set.complete {
        return Err(Error::IncompleteSet);
    }
    let terms: Vec<RankTerm> = set
        .pairs
        .par_iter()
        .map(|p| rank_term(&set.group, p))
        .collect::<Result<_>>()?;
    let total = terms.iter().map(|t| t.term).sum();
    let oracle_total = rank_oracle(&set.group);
    Ok(RankReport {
        terms,
        total,
        oracle_total,
        agree: total == oracle_total,
    })
}

/// Number of real classes minus number of rational classes.
pub fn rank_oracle(group: &FiniteGroup) -> i64 {
    group.conjugacy_partition(ClassKind::Real).len() as i64
        - group.conjugacy_partition(ClassKind::Rational).len() as i64
}

/// `dim_Q Z(QG e) = φ([H:K]) / ∏ [C_i : H_i]`.
pub fn verify_center_degree(pair: &ShodaPair) -> Result<bool> {
    let chain = chain_of(pair)?;
    let phi = euler_phi(pair.index());
    let prod = chain.index_product();
    if phi % prod != 0 {
        return Ok(false);
    }
    Ok(center_component_dim(&pair.pci)? as u64 == phi / prod)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::config::AnalysisConfig;
    use crate::shoda::complete_irredundant_set;

    fn report(name: &str) -> RankReport {
        let g = Arc::new(catalog::build(name).unwrap());
        let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        rank_total(&set).unwrap()
    }

    #[test]
    fn small_totals() {
        let c5 = report("C5");
        let mut terms: Vec<i64> = c5.terms.iter().map(|t| t.term).collect();
        terms.sort();
        assert_eq!(terms, vec![0, 1]);
        assert_eq!(c5.total, 1);
        assert!(c5.agree);
        assert_eq!(report("S3").total, 0);
        assert!(report("S3").terms.iter().all(|t| t.term == 0));
    }

    #[test]
    fn oracle_examples() {
        // Oracle values by hand: C5 has 3 real and 2 rational classes.
        assert_eq!(rank_oracle(&catalog::build("C5").unwrap()), 1);
        assert_eq!(rank_oracle(&catalog::build("Q8").unwrap()), 0);
        assert_eq!(rank_oracle(&catalog::build("C1").unwrap()), 0);
    }

    #[test]
    fn center_degrees_small() {
        for name in ["S3", "C4", "D4", "Q8", "A4"] {
            let g = Arc::new(catalog::build(name).unwrap());
            let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
            for p in &set.pairs {
                assert!(verify_center_degree(p).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn incomplete_set_rejected() {
        let g = Arc::new(catalog::build("C5").unwrap());
        let mut set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        set.pairs.pop();
        set.complete = false;
        assert_eq!(rank_total(&set), Err(Error::IncompleteSet));
    }
}
