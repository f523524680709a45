//! Serializable reports. Every report carries the library version and the
//! resolved configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::field::format_rat;
use crate::group::{ClassKind, FiniteGroup, Subgroup};
use crate::rank::{k_of_pair, verify_center_degree, RankReport};
use crate::shoda::{ChainOrigin, ChainSummary, PairSet, PairStatus, ShodaPair};
use crate::units::{omega, CentralUnit, Provenance};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub config: AnalysisConfig,
}

impl Meta {
    pub fn new(config: &AnalysisConfig) -> Self {
        Meta {
            version: VERSION,
            config: config.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub classes: usize,
    pub real_classes: usize,
    pub rational_classes: usize,
    pub cyclic_subnormal_hypothesis: bool,
}

impl GroupSummary {
    pub fn new(name: &str, group: &FiniteGroup) -> Self {
        GroupSummary {
            name: name.to_string(),
            order: group.order(),
            exponent: group.exponent(),
            abelian: group.is_abelian(),
            classes: group.conjugacy_partition(ClassKind::Ordinary).len(),
            real_classes: group.conjugacy_partition(ClassKind::Real).len(),
            rational_classes: group.conjugacy_partition(ClassKind::Rational).len(),
            cyclic_subnormal_hypothesis: group.check_cyclic_subnormal_hypothesis().0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub h_order: usize,
    pub k_order: usize,
    pub h_generators: Vec<String>,
    pub k_generators: Vec<String>,
    pub index: u64,
    pub status: PairStatus,
    pub chain_origin: ChainOrigin,
    pub chain: Option<ChainSummary>,
    pub k: u8,
    pub center_degree_ok: Option<bool>,
    /// Nonzero pci coefficients keyed by element label.
    pub pci: BTreeMap<String, String>,
}

fn gen_labels(group: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.generators().iter().map(|&x| group.label(x)).collect()
}

impl PairReport {
    pub fn new(group: &FiniteGroup, pair: &ShodaPair) -> Self {
        PairReport {
            h_order: pair.h.order(),
            k_order: pair.k.order(),
            h_generators: gen_labels(group, &pair.h),
            k_generators: gen_labels(group, &pair.k),
            index: pair.index(),
            status: pair.status,
            chain_origin: pair.chain_origin.clone(),
            chain: pair.chain.as_ref().map(ChainSummary::from),
            k: k_of_pair(pair),
            center_degree_ok: verify_center_degree(pair).ok(),
            pci: pair
                .pci
                .iter()
                .map(|(x, c)| (group.label(x), format_rat(c)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairsReport {
    pub meta: Meta,
    pub group: GroupSummary,
    pub complete: bool,
    pub duplicates: Vec<(usize, usize)>,
    pub pairs: Vec<PairReport>,
}

impl PairsReport {
    pub fn new(name: &str, set: &PairSet, config: &AnalysisConfig) -> Self {
        PairsReport {
            meta: Meta::new(config),
            group: GroupSummary::new(name, &set.group),
            complete: set.complete,
            duplicates: set.duplicates.clone(),
            pairs: set.pairs.iter().map(|p| PairReport::new(&set.group, p)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankOutput {
    pub meta: Meta,
    pub group: String,
    #[serde(flatten)]
    pub report: RankReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub meta: Meta,
    pub group: GroupSummary,
    pub complete: bool,
    pub pairs: Vec<PairReport>,
    pub rank: Option<RankReport>,
    pub oracle: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub meta: Meta,
    pub group: String,
    pub real_classes: usize,
    pub rational_classes: usize,
    pub oracle: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub provenance: Provenance,
    pub inputs: Vec<String>,
    pub n_b: Option<u64>,
    pub support_size: usize,
    pub max_coeff_bits: u64,
    pub central_unit: bool,
    /// Central character value per pair, in pair order.
    pub omega: Vec<String>,
}

impl UnitReport {
    pub fn new(unit: &CentralUnit, n_b: Option<u64>, pairs: &PairSet) -> Self {
        UnitReport {
            provenance: unit.provenance,
            inputs: unit.inputs.clone(),
            n_b,
            support_size: unit.value.as_qg().support_len(),
            max_coeff_bits: unit.value.max_coeff_bits(),
            central_unit: unit.verify(),
            omega: pairs
                .pairs
                .iter()
                .map(|p| omega(&unit.value, &p.induced).to_string())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitsReport {
    pub meta: Meta,
    pub group: String,
    pub units: Vec<UnitReport>,
    /// Requested constructions that were not run, with the reason.
    pub skipped: Vec<String>,
    pub witness_rank: Option<usize>,
    pub oracle: i64,
}

/// One row per pair, tab separated, with a header.
pub fn rank_tsv(report: &RankReport) -> String {
    let mut s = String::from("H\tK\t|H|\t|K|\t[H:K]\tchain_indices\tk\tterm\n");
    for t in &report.terms {
        let idx: Vec<String> = t.chain_indices.iter().map(usize::to_string).collect();
        let _ = writeln!(
            s,
            "<{}>\t<{}>\t{}\t{}\t{}\t{}\t{}\t{}",
            t.h_generators.join(","),
            t.k_generators.join(","),
            t.h_order,
            t.k_order,
            t.index_hk,
            idx.join(","),
            t.k,
            t.term
        );
    }
    let _ = writeln!(s, "total\t\t\t\t\t\t\t{}", report.total);
    s
}

/// Plain-text table of the rank computation.
pub fn rank_text(report: &RankReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<28} {:<28} {:>6} {:<12} {:>2} {:>5}",
        "H", "K", "[H:K]", "[C_i:H_i]", "k", "term"
    );
    for t in &report.terms {
        let idx: Vec<String> = t.chain_indices.iter().map(usize::to_string).collect();
        let _ = writeln!(
            s,
            "{:<28} {:<28} {:>6} {:<12} {:>2} {:>5}",
            format!("<{}>", t.h_generators.join(",")),
            format!("<{}>", t.k_generators.join(",")),
            t.index_hk,
            idx.join(","),
            t.k,
            t.term
        );
    }
    let _ = writeln!(
        s,
        "rank = {} (class count: {}, {})",
        report.total,
        report.oracle_total,
        if report.agree { "agree" } else { "DISAGREE" }
    );
    s
}
