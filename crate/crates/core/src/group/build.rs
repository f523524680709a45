//! Permutation group closure.

use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A permutation of `0..degree` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u16>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u16).collect())
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if touched[p - 1] {
                    return Err(Error::Parse(format!("point {p} repeated in cycles")));
                }
                touched[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                img[p - 1] = (q - 1) as u16;
            }
        }
        Ok(Permutation(img))
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push(')');
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl FiniteGroup {
    /// Closure of the given generators (each a list of 1-based cycles).
    ///
    /// Elements are numbered in breadth-first order from the identity, and
    /// the product `a * b` applies `a` first.
    pub fn from_permutations(degree: usize, generators: &[Vec<Vec<usize>>], cap: usize) -> Result<Self> {
        let gens: Vec<Permutation> = generators
            .iter()
            .map(|c| Permutation::from_cycles(degree, c))
            .collect::<Result<_>>()?;
        Self::from_permutation_list(degree, &gens, cap)
    }

    pub fn from_permutation_list(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        let cap = cap.min(FiniteGroup::MAX_ORDER);
        let mut elems = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for s in gens {
                let p = elems[i].then(s);
                if !index.contains_key(&p) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "permutation group closure".into(),
                            cap,
                            got: elems.len() + 1,
                        });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let group = FiniteGroup::from_fn(n, |a, b| index[&elems[a].then(&elems[b])])?;
        let gen_idx = gens
            .iter()
            .map(|s| index[s])
            .filter(|&x| x != 0)
            .collect();
        let labels = elems.iter().map(|p| p.cycle_string()).collect();
        Ok(group.with_labels(labels).with_generators(gen_idx))
    }
}
