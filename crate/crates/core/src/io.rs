//! JSON input and output for groups and candidate pair lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, PcPresentation, Subgroup};
use crate::shoda::PairCandidate;

/// Permutation closure bound for JSON input.
pub const PERM_CLOSURE_CAP: usize = 5000;

/// A group description.
///
/// Permutation generators are lists of 1-based cycles. PC powers are keyed
/// by generator (`"1"`), commutators by `"j,i"` with `j > i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Elem>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Pc {
        orders: Vec<u32>,
        #[serde(default)]
        powers: BTreeMap<String, String>,
        #[serde(default)]
        commutators: BTreeMap<String, String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cayley {
                table,
                labels,
                generators,
            } => {
                let mut g = FiniteGroup::from_cayley(table)?;
                if let Some(l) = labels {
                    if l.len() != table.len() {
                        return Err(Error::Parse("labels length differs from the table".into()));
                    }
                    g = g.with_labels(l.clone());
                }
                if let Some(gens) = generators {
                    if gens.iter().any(|&x| x >= table.len()) {
                        return Err(Error::Parse("generator index out of range".into()));
                    }
                    g = g.with_generators(gens.clone());
                }
                Ok(g)
            }
            GroupSpec::Perm { degree, generators } => {
                FiniteGroup::from_permutations(*degree, generators, PERM_CLOSURE_CAP)
            }
            GroupSpec::Pc {
                orders,
                powers,
                commutators,
            } => FiniteGroup::from_pc_presentation(&pc_from_maps(orders, powers, commutators)?),
        }
    }

    /// Cayley description of `group`, keeping labels and named generators.
    pub fn cayley_of(group: &FiniteGroup) -> Self {
        GroupSpec::Cayley {
            table: group.cayley_table(),
            labels: group.labels().map(<[String]>::to_vec),
            generators: Some(group.named_generators().to_vec()),
        }
    }

    pub fn pc_of(pres: &PcPresentation) -> Self {
        GroupSpec::Pc {
            orders: pres.orders().to_vec(),
            powers: pres.power_strings(),
            commutators: pres.commutator_strings(),
        }
    }
}

fn pc_from_maps(
    orders: &[u32],
    powers: &BTreeMap<String, String>,
    commutators: &BTreeMap<String, String>,
) -> Result<PcPresentation> {
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator number `{s}`")))
    };
    let mut p = PcPresentation::new(orders.to_vec());
    for (i, w) in powers {
        p = p.with_power(num(i)?, w)?;
    }
    for (key, w) in commutators {
        let (j, i) = key
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("commutator key `{key}` is not `j,i`")))?;
        p = p.with_commutator(num(j)?, num(i)?, w)?;
    }
    Ok(p)
}

pub fn parse_group_json(text: &str) -> Result<FiniteGroup> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}

/// A subgroup given by generator words, by member indices, or by
/// generating element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Words(Vec<String>),
    Elements { elements: Vec<Elem> },
    Generators { generators: Vec<Elem> },
}

impl SubgroupSpec {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<Subgroup> {
        let check = |xs: &[Elem]| -> Result<()> {
            match xs.iter().find(|&&x| x >= group.order()) {
                Some(x) => Err(Error::Parse(format!("element {x} out of range"))),
                None => Ok(()),
            }
        };
        match self {
            SubgroupSpec::Words(ws) => {
                let xs = ws
                    .iter()
                    .map(|w| group.eval_word_str(w))
                    .collect::<Result<Vec<_>>>()?;
                Ok(group.subgroup_generated(&xs))
            }
            SubgroupSpec::Elements { elements } => {
                check(elements)?;
                group.subgroup_from_members(elements)
            }
            SubgroupSpec::Generators { generators } => {
                check(generators)?;
                Ok(group.subgroup_generated(generators))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    #[serde(rename = "H")]
    pub h: SubgroupSpec,
    #[serde(rename = "K")]
    pub k: SubgroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<SubgroupSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsFile {
    pub pairs: Vec<PairEntry>,
}

impl PairsFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn candidates(&self, group: &FiniteGroup) -> Result<Vec<PairCandidate>> {
        self.pairs
            .iter()
            .map(|p| {
                Ok(PairCandidate {
                    h: p.h.resolve(group)?,
                    k: p.k.resolve(group)?,
                    chain: p
                        .chain
                        .as_ref()
                        .map(|c| c.iter().map(|s| s.resolve(group)).collect::<Result<Vec<_>>>())
                        .transpose()?,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn group_specs() {
        let c2 = parse_group_json(r#"{"type":"cayley","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(c2.order(), 2);
        let s3 = parse_group_json(r#"{"type":"perm","degree":3,"generators":[[[1,2]],[[1,2,3]]]}"#).unwrap();
        assert_eq!(s3.order(), 6);
        let c4 = parse_group_json(r#"{"type":"pc","orders":[2,2],"powers":{"1":"x2"}}"#).unwrap();
        assert_eq!(c4.exponent(), 4);
        assert!(matches!(parse_group_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_group_json(r#"{"type":"cayley","table":[[0,1],[1,1]]}"#),
            Err(Error::NotAGroup { .. })
        ));
    }

    #[test]
    fn cayley_round_trip() {
        let g = catalog::build("D4").unwrap();
        let spec = GroupSpec::cayley_of(&g);
        let text = serde_json::to_string(&spec).unwrap();
        let back = parse_group_json(&text).unwrap();
        assert_eq!(back.cayley_table(), g.cayley_table());
        assert_eq!(back.named_generators(), g.named_generators());
        let pc = GroupSpec::pc_of(&catalog::paper_1000_86());
        assert_eq!(pc.build().unwrap().order(), 1000);
    }

    #[test]
    fn pairs_file_forms() {
        let g = catalog::build("S3").unwrap();
        let text = r#"{"pairs":[
            {"H":["x1","x2"],"K":{"generators":[]}},
            {"H":{"elements":[0]},"K":[],"chain":[{"elements":[0]},["x1","x2"]]}
        ]}"#;
        let c = PairsFile::parse(text).unwrap().candidates(&g).unwrap();
        assert_eq!(c[0].h.order(), 6);
        assert_eq!(c[0].k.order(), 1);
        assert_eq!(c[1].chain.as_ref().unwrap().len(), 2);
        let bad = r#"{"pairs":[{"H":{"elements":[0,1,2]},"K":[]}]}"#;
        assert!(PairsFile::parse(bad).unwrap().candidates(&g).is_err());
    }
}
