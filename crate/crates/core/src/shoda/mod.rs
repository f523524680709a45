//! Shoda pairs, strong and generalized strong Shoda pairs, and complete
//! irredundant sets of pairs.

mod chain;
mod character;

pub use chain::{verify_chain, ChainSummary, StrongInductiveChain};
pub use character::{InducedCharacter, LinearCharacter};

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::field::Rat;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::qalgebra::{epsilon, QGElement};

pub(crate) use crate::qalgebra::sum_of_conjugates;

/// `K ⊴ H`, `H/K` cyclic, and every `g ∉ H` has some `h ∈ H` with
/// `[h, g] ∈ H \ K`.
pub fn is_shoda_pair(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    if !k.is_subgroup_of(h) || !group.is_cyclic_quotient(h, k) {
        return false;
    }
    group.elements().filter(|&g| !h.contains(g)).all(|g| {
        h.members().iter().any(|&x| {
            let c = group.commutator(x, g);
            h.contains(c) && !k.contains(c)
        })
    })
}

/// `H ⊴ Cen_G(ε(H,K))` and `ε ε^g = 0` for every `g` outside that centralizer.
pub fn is_strong_shoda_pair(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    let eps = epsilon(group, h, k)?;
    Ok(chain::check_level(group, &eps, h, &group.whole()).is_ok())
}

/// A strong inductive chain from `H` to `G`, trying the one-step chain first.
pub fn find_strong_inductive_chain(
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
    cfg: &AnalysisConfig,
) -> Result<StrongInductiveChain> {
    if !is_shoda_pair(group, h, k) {
        return Err(Error::NotShodaPair("chain search needs a Shoda pair".into()));
    }
    let eps = epsilon(group, h, k)?;
    chain::search_chain(group, &eps, h, cfg)
}

/// `e_Q(λ^G)` for the canonical faithful character of `H/K`.
pub fn pci(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<QGElement> {
    if !is_shoda_pair(group, h, k) {
        return Err(Error::NotShodaPair("pci needs a Shoda pair".into()));
    }
    Ok(LinearCharacter::new(group, h, k)?.induce(group).pci(group))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    /// Shoda pair with no strong inductive chain established.
    Shoda,
    Strong,
    GeneralizedStrong,
}

/// How the chain of a pair was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainOrigin {
    /// The one-step chain `H ≤ G` of a strong pair.
    Strong,
    Searched,
    Supplied,
    /// Search exhausted without a chain (status stays undetermined).
    NotFound,
    /// Search stopped at a cap (status stays undetermined).
    BoundExceeded,
}

#[derive(Clone, Debug)]
pub struct ShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    pub status: PairStatus,
    pub chain: Option<StrongInductiveChain>,
    pub chain_origin: ChainOrigin,
    pub character: LinearCharacter,
    pub induced: InducedCharacter,
    pub pci: QGElement,
    /// `e(G, H, K)`.
    pub e: QGElement,
    pub epsilon: QGElement,
}

impl ShodaPair {
    /// `[H:K]`.
    pub fn index(&self) -> u64 {
        (self.h.order() / self.k.order()) as u64
    }

    pub fn is_strong(&self) -> bool {
        self.status == PairStatus::Strong
    }
}

/// A candidate pair, optionally with a chain to verify instead of search.
#[derive(Clone, Debug)]
pub struct PairCandidate {
    pub h: Subgroup,
    pub k: Subgroup,
    pub chain: Option<Vec<Subgroup>>,
}

/// Classifies a Shoda pair: strong, generalized strong with a verified or
/// searched chain, or Shoda with the chain question left open.
pub fn classify_pair(
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
    supplied_chain: Option<&[Subgroup]>,
    cfg: &AnalysisConfig,
) -> Result<ShodaPair> {
    let mut pair = prepare_pair(group, h, k)?;
    finish_classification(group, &mut pair, supplied_chain, cfg, true)?;
    Ok(pair)
}

fn prepare_pair(group: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<ShodaPair> {
    if !h.is_subgroup_of(&group.whole()) || !k.is_subgroup_of(h) {
        return Err(Error::ContainmentViolation("expected K ≤ H ≤ G".into()));
    }
    if !is_shoda_pair(group, h, k) {
        return Err(Error::NotShodaPair(format!(
            "H of order {}, K of order {}",
            h.order(),
            k.order()
        )));
    }
    let character = LinearCharacter::new(group, h, k)?;
    let induced = character.induce(group);
    let pci = induced.pci(group);
    let eps = epsilon(group, h, k)?;
    let e = sum_of_conjugates(group, &eps, &group.whole());
    Ok(ShodaPair {
        h: h.clone(),
        k: k.clone(),
        status: PairStatus::Shoda,
        chain: None,
        chain_origin: ChainOrigin::NotFound,
        character,
        induced,
        pci,
        e,
        epsilon: eps,
    })
}

/// Sets status and chain. With `search` false only the strong test runs.
fn finish_classification(
    group: &Arc<FiniteGroup>,
    pair: &mut ShodaPair,
    supplied_chain: Option<&[Subgroup]>,
    cfg: &AnalysisConfig,
    search: bool,
) -> Result<()> {
    let whole = group.whole();
    let strong = chain::check_level(group, &pair.epsilon, &pair.h, &whole);
    if let Some(steps) = supplied_chain {
        pair.chain = Some(verify_chain(group, &pair.epsilon, &pair.h, steps)?);
        pair.chain_origin = ChainOrigin::Supplied;
        pair.status = if strong.is_ok() {
            PairStatus::Strong
        } else {
            PairStatus::GeneralizedStrong
        };
        return Ok(());
    }
    if let Ok((c, t)) = strong {
        pair.status = PairStatus::Strong;
        pair.chain_origin = ChainOrigin::Strong;
        pair.chain = Some(StrongInductiveChain {
            steps: vec![pair.h.clone(), whole],
            centralizers: vec![c],
            transversals: vec![t],
        });
        return Ok(());
    }
    if !search {
        return Ok(());
    }
    match chain::search_chain(group, &pair.epsilon, &pair.h, cfg) {
        Ok(c) => {
            pair.status = PairStatus::GeneralizedStrong;
            pair.chain_origin = ChainOrigin::Searched;
            pair.chain = Some(c);
        }
        Err(Error::ChainNotFound) => pair.chain_origin = ChainOrigin::NotFound,
        Err(Error::SearchBoundExceeded(_)) => pair.chain_origin = ChainOrigin::BoundExceeded,
        Err(e) => return Err(e),
    }
    Ok(())
}

/// One pair per primitive central idempotent found among the candidates.
#[derive(Clone, Debug)]
pub struct PairSet {
    pub group: Arc<FiniteGroup>,
    pub pairs: Vec<ShodaPair>,
    /// `Σ pci = 1`.
    pub complete: bool,
    /// Supplied candidates dropped because an earlier one has the same pci,
    /// as `(candidate index, kept pair index)`.
    pub duplicates: Vec<(usize, usize)>,
}

impl PairSet {
    pub fn pci_sum(&self) -> QGElement {
        self.pairs
            .iter()
            .fold(QGElement::zero(&self.group), |acc, p| acc.add(&p.pci).expect("same group"))
    }
}

type PciKey = Vec<(Elem, Rat)>;

fn pci_key(e: &QGElement) -> PciKey {
    e.iter().map(|(x, c)| (x, c.clone())).collect()
}

pub(crate) fn run_parallel<T: Send>(cfg: &AnalysisConfig, f: impl FnOnce() -> T + Send) -> T {
    match cfg.parallelism {
        crate::config::Parallelism::Auto => f(),
        crate::config::Parallelism::Threads(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .unwrap_or_else(|_| panic!("thread pool with {n} threads")),
    }
}

/// A complete and irredundant set when one exists among the candidates.
///
/// Without candidates, every subgroup `H` (up to conjugacy) and every
/// `K ⊴ H` with `H/K` cyclic is tried; this needs `|G|` within the
/// subgroup cap. Within each pci class the representative is the first
/// strong pair, else the first pair with a chain, else the first pair.
pub fn complete_irredundant_set(
    group: &Arc<FiniteGroup>,
    candidates: Option<&[PairCandidate]>,
    cfg: &AnalysisConfig,
) -> Result<PairSet> {
    cfg.validate()?;
    match candidates {
        Some(c) => run_parallel(cfg, || from_candidates(group, c, cfg)),
        None => run_parallel(cfg, || enumerate(group, cfg)),
    }
}

fn from_candidates(
    group: &Arc<FiniteGroup>,
    candidates: &[PairCandidate],
    cfg: &AnalysisConfig,
) -> Result<PairSet> {
    let classified: Vec<ShodaPair> = candidates
        .par_iter()
        .map(|c| classify_pair(group, &c.h, &c.k, c.chain.as_deref(), cfg))
        .collect::<Result<_>>()?;
    let mut seen: HashMap<PciKey, usize> = HashMap::new();
    let mut pairs = vec![];
    let mut duplicates = vec![];
    for (i, p) in classified.into_iter().enumerate() {
        let key = pci_key(&p.pci);
        if let Some(&j) = seen.get(&key) {
            duplicates.push((i, j));
            continue;
        }
        seen.insert(key, pairs.len());
        pairs.push(p);
    }
    Ok(finish_set(group, pairs, duplicates))
}

fn finish_set(group: &Arc<FiniteGroup>, pairs: Vec<ShodaPair>, duplicates: Vec<(usize, usize)>) -> PairSet {
    let mut set = PairSet {
        group: group.clone(),
        pairs,
        complete: false,
        duplicates,
    };
    set.complete = set.pci_sum().is_one();
    set
}

fn enumerate(group: &Arc<FiniteGroup>, cfg: &AnalysisConfig) -> Result<PairSet> {
    let subs = group.all_subgroups(cfg.subgroup_cap)?;
    let whole = group.whole();
    // One H per conjugacy class, largest first.
    let mut reps: Vec<&Subgroup> = vec![];
    let mut covered: std::collections::HashSet<ElemSet> = Default::default();
    for h in subs.iter().rev() {
        if covered.contains(h.mask()) {
            continue;
        }
        for t in group.right_transversal(&group.normalizer(h, &whole), &whole) {
            covered.insert(group.conjugate_subgroup(h, t).mask().clone());
        }
        reps.push(h);
    }
    let mut cands: Vec<(Subgroup, Subgroup)> = vec![];
    for h in reps {
        for k in subs.iter().rev() {
            if k.is_subgroup_of(h) && group.is_cyclic_quotient(h, k) {
                cands.push((h.clone(), k.clone()));
            }
        }
    }
    let prepared: Vec<Option<ShodaPair>> = cands
        .par_iter()
        .map(|(h, k)| {
            if !is_shoda_pair(group, h, k) {
                return Ok(None);
            }
            let mut p = prepare_pair(group, h, k)?;
            finish_classification(group, &mut p, None, cfg, false)?;
            Ok(Some(p))
        })
        .collect::<Result<_>>()?;
    // Group by pci, in candidate order.
    let mut classes: Vec<Vec<ShodaPair>> = vec![];
    let mut index: HashMap<PciKey, usize> = HashMap::new();
    for p in prepared.into_iter().flatten() {
        let key = pci_key(&p.pci);
        match index.get(&key) {
            Some(&i) => classes[i].push(p),
            None => {
                index.insert(key, classes.len());
                classes.push(vec![p]);
            }
        }
    }
    let pairs: Vec<ShodaPair> = classes
        .into_par_iter()
        .map(|members| choose_representative(group, members, cfg))
        .collect::<Result<_>>()?;
    Ok(finish_set(group, pairs, vec![]))
}

fn choose_representative(
    group: &Arc<FiniteGroup>,
    mut members: Vec<ShodaPair>,
    cfg: &AnalysisConfig,
) -> Result<ShodaPair> {
    if let Some(i) = members.iter().position(ShodaPair::is_strong) {
        return Ok(members.swap_remove(i));
    }
    let mut first_outcome = None;
    for (i, p) in members.iter_mut().enumerate() {
        finish_classification(group, p, None, cfg, true)?;
        if p.chain.is_some() {
            return Ok(members.swap_remove(i));
        }
        first_outcome.get_or_insert(p.chain_origin.clone());
    }
    let mut first = members.swap_remove(0);
    if let Some(o) = first_outcome {
        first.chain_origin = o;
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutations(3, &[vec![vec![1, 2]], vec![vec![1, 2, 3]]], 100).unwrap(),
        )
    }

    fn elem(g: &FiniteGroup, label: &str) -> Elem {
        g.elements().find(|&x| g.label(x) == label).unwrap()
    }

    /// Condition (ii) checked with the generated subgroup `[H, g]` instead
    /// of the commutator set.
    fn shoda_oracle(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
        if !g.is_cyclic_quotient(h, k) {
            return false;
        }
        g.elements().all(|x| {
            let comms: Vec<Elem> = h.members().iter().map(|&y| g.commutator(y, x)).collect();
            let gen = g.subgroup_generated(&comms);
            let inter = g.intersection(&gen, h);
            !inter.is_subgroup_of(k) || h.contains(x)
        })
    }

    #[test]
    fn shoda_conditions() {
        let g = s3();
        let whole = g.whole();
        let a3 = g.derived_subgroup(&whole);
        let t = g.cyclic_subgroup(elem(&g, "(1,2)"));
        assert!(is_shoda_pair(&g, &a3, &g.trivial()));
        assert!(!is_shoda_pair(&g, &t, &g.trivial()));
        assert!(is_strong_shoda_pair(&g, &a3, &g.trivial()).unwrap());
        let c = find_strong_inductive_chain(&g, &a3, &g.trivial(), &AnalysisConfig::default()).unwrap();
        assert_eq!(c.step_orders(), vec![3, 6]);
        assert!(matches!(
            find_strong_inductive_chain(&g, &t, &g.trivial(), &AnalysisConfig::default()),
            Err(Error::NotShodaPair(_))
        ));
        let subs = g.all_subgroups(100).unwrap();
        for h in &subs {
            for k in &subs {
                if k.is_subgroup_of(h) {
                    assert_eq!(is_shoda_pair(&g, h, k), shoda_oracle(&g, h, k));
                }
            }
        }
    }

    #[test]
    fn abelian_pairs_are_strong() {
        let g = Arc::new(FiniteGroup::from_fn(12, |a, b| (a + b) % 12).unwrap());
        let whole = g.whole();
        for k in g.all_subgroups(100).unwrap() {
            assert!(is_shoda_pair(&g, &whole, &k));
            assert!(is_strong_shoda_pair(&g, &whole, &k).unwrap());
        }
    }

    #[test]
    fn s3_and_c4_sets() {
        let cfg = AnalysisConfig::default();
        let g = s3();
        let set = complete_irredundant_set(&g, None, &cfg).unwrap();
        assert!(set.complete);
        let shape: Vec<(usize, usize)> = set.pairs.iter().map(|p| (p.h.order(), p.k.order())).collect();
        assert_eq!(shape, vec![(6, 6), (6, 3), (3, 1)]);
        assert!(set.pairs.iter().all(|p| p.is_strong()));
        let c4 = Arc::new(FiniteGroup::from_fn(4, |a, b| (a + b) % 4).unwrap());
        let set = complete_irredundant_set(&c4, None, &cfg).unwrap();
        assert!(set.complete);
        assert_eq!(set.pairs.len(), 3);
    }

    #[test]
    fn pci_properties_on_s4() {
        let g = Arc::new(
            FiniteGroup::from_permutations(4, &[vec![vec![1, 2, 3, 4]], vec![vec![1, 2]]], 100).unwrap(),
        );
        let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.pairs.len(), 5);
        for (i, p) in set.pairs.iter().enumerate() {
            assert!(p.pci.is_idempotent() && p.pci.is_central());
            if p.is_strong() {
                assert_eq!(p.e, p.pci);
            }
            for q in &set.pairs[i + 1..] {
                assert!(crate::qalgebra::are_orthogonal(&p.pci, &q.pci).unwrap());
            }
        }
    }

    #[test]
    fn supplied_duplicates_are_reported() {
        let g = s3();
        let whole = g.whole();
        let a3 = g.derived_subgroup(&whole);
        let cands = vec![
            PairCandidate { h: a3.clone(), k: g.trivial(), chain: None },
            PairCandidate { h: a3.clone(), k: g.trivial(), chain: Some(vec![a3.clone(), a3.clone(), whole.clone()]) },
            PairCandidate { h: whole.clone(), k: whole.clone(), chain: None },
        ];
        let set = complete_irredundant_set(&g, Some(&cands), &AnalysisConfig::default()).unwrap();
        assert_eq!(set.duplicates, vec![(1, 0)]);
        assert!(!set.complete);
        let bad = vec![PairCandidate { h: a3.clone(), k: g.trivial(), chain: Some(vec![a3.clone()]) }];
        assert!(matches!(
            complete_irredundant_set(&g, Some(&bad), &AnalysisConfig::default()),
            Err(Error::InvalidChain(_))
        ));
    }
}
