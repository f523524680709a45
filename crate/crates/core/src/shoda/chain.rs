//! Strong inductive chains `H = H_0 ≤ H_1 ≤ ... ≤ H_n = G`.
//!
//! Level `i` holds when, for `e_i = e(H_i, H, K)` and
//! `C_i = Cen_{H_{i+1}}(e_i)`, the subgroup `H_i` is normal in `C_i` and the
//! distinct `H_{i+1}`-conjugates of `e_i` are mutually orthogonal.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::config::AnalysisConfig;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::qalgebra::{centralizer_of, QGElement};

use super::sum_of_conjugates;

#[derive(Clone, Debug)]
pub struct StrongInductiveChain {
    /// `H_0, ..., H_n`, repeated subgroups kept as given.
    pub steps: Vec<Subgroup>,
    /// `C_i` for each level `i < n`.
    pub centralizers: Vec<Subgroup>,
    /// Right transversal of `C_i` in `H_{i+1}`, least coset elements.
    pub transversals: Vec<Vec<Elem>>,
}

impl StrongInductiveChain {
    pub fn levels(&self) -> usize {
        self.centralizers.len()
    }

    pub fn step_orders(&self) -> Vec<usize> {
        self.steps.iter().map(Subgroup::order).collect()
    }

    /// `[C_i : H_i]` per level.
    pub fn centralizer_indices(&self) -> Vec<usize> {
        self.centralizers
            .iter()
            .zip(&self.steps)
            .map(|(c, h)| c.order() / h.order())
            .collect()
    }

    pub fn index_product(&self) -> u64 {
        self.centralizer_indices().iter().map(|&x| x as u64).product()
    }

    /// Levels with `H_i ≠ H_{i+1}`, as `(i, H_i, C_i, T_i)`.
    pub fn proper_levels(&self) -> impl Iterator<Item = (usize, &Subgroup, &Subgroup, &[Elem])> {
        (0..self.levels())
            .filter(|&i| self.steps[i] != self.steps[i + 1])
            .map(|i| (i, &self.steps[i], &self.centralizers[i], self.transversals[i].as_slice()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainSummary {
    pub step_orders: Vec<usize>,
    pub centralizer_indices: Vec<usize>,
}

impl From<&StrongInductiveChain> for ChainSummary {
    fn from(c: &StrongInductiveChain) -> Self {
        ChainSummary {
            step_orders: c.step_orders(),
            centralizer_indices: c.centralizer_indices(),
        }
    }
}

/// Checks one level given `e_i`. Returns `C_i` and its transversal, or the
/// reason for failure.
pub(crate) fn check_level(
    group: &Arc<FiniteGroup>,
    e: &QGElement,
    lower: &Subgroup,
    upper: &Subgroup,
) -> std::result::Result<(Subgroup, Vec<Elem>), String> {
    let c = centralizer_of(e, upper);
    if !group.is_normal(lower, &c) {
        return Err(format!(
            "subgroup of order {} is not normal in its centralizer of order {}",
            lower.order(),
            c.order()
        ));
    }
    let reps = group.right_transversal(&c, upper);
    for &r in reps.iter().filter(|&&r| r != 0) {
        let prod = e.mul(&e.conj(r)).expect("same group");
        if !prod.is_zero() {
            return Err(format!(
                "conjugates by {} are not orthogonal at level of order {}",
                group.label(r),
                upper.order()
            ));
        }
    }
    Ok((c, reps))
}

/// Verifies a user-supplied chain level by level.
pub fn verify_chain(
    group: &Arc<FiniteGroup>,
    eps: &QGElement,
    h: &Subgroup,
    steps: &[Subgroup],
) -> Result<StrongInductiveChain> {
    if steps.first() != Some(h) {
        return Err(Error::InvalidChain("chain must start at H".into()));
    }
    if steps.last() != Some(&group.whole()) {
        return Err(Error::InvalidChain("chain must end at G".into()));
    }
    let mut centralizers = vec![];
    let mut transversals = vec![];
    for (i, w) in steps.windows(2).enumerate() {
        if !w[0].is_subgroup_of(&w[1]) {
            return Err(Error::InvalidChain(format!("step {i} is not contained in step {}", i + 1)));
        }
        let e = sum_of_conjugates(group, eps, &w[0]);
        let (c, t) = check_level(group, &e, &w[0], &w[1])
            .map_err(|why| Error::InvalidChain(format!("level {i}: {why}")))?;
        centralizers.push(c);
        transversals.push(t);
    }
    Ok(StrongInductiveChain {
        steps: steps.to_vec(),
        centralizers,
        transversals,
    })
}

/// Depth-first search for a chain. `G` itself is tried first from every
/// node, then the normalizer of the current top, then the remaining
/// overgroups by decreasing order.
pub(crate) fn search_chain(
    group: &Arc<FiniteGroup>,
    eps: &QGElement,
    h: &Subgroup,
    cfg: &AnalysisConfig,
) -> Result<StrongInductiveChain> {
    let whole = group.whole();
    let mut s = Search {
        group,
        eps,
        whole: whole.clone(),
        overgroups: None,
        h: h.clone(),
        e_cache: HashMap::new(),
        dead: HashSet::new(),
        visits: 0,
        cfg,
        exceeded: false,
    };
    let mut path = vec![h.clone()];
    let mut levels = vec![];
    if s.dfs(&mut path, &mut levels) {
        let (centralizers, transversals) = levels.into_iter().unzip();
        return Ok(StrongInductiveChain {
            steps: path,
            centralizers,
            transversals,
        });
    }
    if s.exceeded {
        Err(Error::SearchBoundExceeded(format!(
            "{} level checks, depth cap {}",
            s.visits, cfg.chain_depth_cap
        )))
    } else {
        Err(Error::ChainNotFound)
    }
}

struct Search<'a> {
    group: &'a Arc<FiniteGroup>,
    eps: &'a QGElement,
    whole: Subgroup,
    h: Subgroup,
    overgroups: Option<Vec<Subgroup>>,
    e_cache: HashMap<ElemSet, QGElement>,
    dead: HashSet<ElemSet>,
    visits: usize,
    cfg: &'a AnalysisConfig,
    exceeded: bool,
}

impl Search<'_> {
    fn e_of(&mut self, s: &Subgroup) -> QGElement {
        if let Some(e) = self.e_cache.get(s.mask()) {
            return e.clone();
        }
        let e = sum_of_conjugates(self.group, self.eps, s);
        self.e_cache.insert(s.mask().clone(), e.clone());
        e
    }

    fn candidates(&mut self, top: &Subgroup) -> Vec<Subgroup> {
        let g = self.group;
        let over = self
            .overgroups
            .get_or_insert_with(|| g.overgroups(&self.h));
        let mut rest: Vec<Subgroup> = over
            .iter()
            .filter(|t| t.order() > top.order() && top.is_subgroup_of(t) && **t != self.whole)
            .cloned()
            .collect();
        rest.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members().cmp(b.members())));
        let norm = g.normalizer(top, &self.whole);
        let mut out = vec![self.whole.clone()];
        if norm != *top && norm != self.whole {
            rest.retain(|t| *t != norm);
            out.push(norm);
        }
        out.extend(rest);
        out
    }

    /// Returns true once `path` reaches `G`. Sets `exceeded` when a cap cut
    /// the search short.
    fn dfs(&mut self, path: &mut Vec<Subgroup>, levels: &mut Vec<(Subgroup, Vec<Elem>)>) -> bool {
        let top = path.last().expect("nonempty").clone();
        if top == self.whole && !levels.is_empty() {
            return true;
        }
        if levels.len() >= self.cfg.chain_depth_cap {
            self.exceeded = true;
            return false;
        }
        if self.dead.contains(top.mask()) {
            return false;
        }
        let e = self.e_of(&top);
        let was_exceeded = self.exceeded;
        self.exceeded = false;
        let cands = if top == self.whole {
            vec![self.whole.clone()]
        } else {
            self.candidates(&top)
        };
        for next in cands {
            if self.visits >= self.cfg.chain_visit_cap {
                self.exceeded = true;
                break;
            }
            self.visits += 1;
            if let Ok(level) = check_level(self.group, &e, &top, &next) {
                path.push(next);
                levels.push(level);
                if self.dfs(path, levels) {
                    return true;
                }
                path.pop();
                levels.pop();
            }
        }
        if !self.exceeded {
            self.dead.insert(top.mask().clone());
        }
        self.exceeded |= was_exceeded;
        false
    }
}
