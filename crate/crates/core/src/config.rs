//! Analysis limits and parallelism.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parallelism {
    Auto,
    Threads(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup_cap: usize,
    /// Longest strong inductive chain tried by the search (in levels).
    pub chain_depth_cap: usize,
    /// Level checks allowed per chain search.
    pub chain_visit_cap: usize,
    /// Singular values at or below this count as zero in the rank witness.
    pub rank_witness_tolerance: f64,
    pub parallelism: Parallelism,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            subgroup_cap: 200,
            chain_depth_cap: 8,
            chain_visit_cap: 100_000,
            rank_witness_tolerance: 1e-6,
            parallelism: Parallelism::Auto,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::PreconditionFailed(format!("{what} must be positive")));
        if self.subgroup_cap == 0 {
            return bad("subgroup_cap");
        }
        if self.chain_depth_cap == 0 {
            return bad("chain_depth_cap");
        }
        if self.chain_visit_cap == 0 {
            return bad("chain_visit_cap");
        }
        if !(self.rank_witness_tolerance > 0.0) {
            return bad("rank_witness_tolerance");
        }
        if self.parallelism == Parallelism::Threads(0) {
            return bad("thread count");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_serde() {
        let c = AnalysisConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.subgroup_cap, 200);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"parallelism\":\"auto\""));
        let back: AnalysisConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let t = AnalysisConfig {
            parallelism: Parallelism::Threads(0),
            ..c
        };
        assert!(t.validate().is_err());
    }
}
