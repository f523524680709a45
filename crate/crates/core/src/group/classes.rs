//! Ordinary, real and rational conjugacy classes.

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Ordinary,
    /// Ordinary classes merged with the class of the inverse.
    Real,
    /// Ordinary classes merged with the classes of all generators of `<g>`.
    Rational,
}

#[derive(Clone, Debug)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<Elem>>,
    pub class_of: Vec<usize>,
    pub kind: ClassKind,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

impl FiniteGroup {
    pub fn conjugacy_partition(&self, kind: ClassKind) -> ConjugacyPartition {
        let n = self.order();
        let gens = self.generating_set();
        // Ordinary classes as orbits under conjugation by the generators.
        let mut class_of = vec![usize::MAX; n];
        let mut count = 0;
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            class_of[x] = count;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &g in &gens {
                    let z = self.conj(y, g);
                    if class_of[z] == usize::MAX {
                        class_of[z] = count;
                        stack.push(z);
                    }
                }
            }
            count += 1;
        }
        let mut uf = UnionFind::new(count);
        match kind {
            ClassKind::Ordinary => {}
            ClassKind::Real => {
                for x in 0..n {
                    uf.union(class_of[x], class_of[self.inv(x)]);
                }
            }
            ClassKind::Rational => {
                for x in 0..n {
                    let o = self.element_order(x) as u64;
                    let mut y = x;
                    for m in 1..o.max(1) {
                        if m > 1 {
                            y = self.mul(y, x);
                        }
                        if num_integer::gcd(m, o) == 1 {
                            uf.union(class_of[x], class_of[y]);
                        }
                    }
                }
            }
        }
        // Renumber merged classes by least element.
        let mut renumber = vec![usize::MAX; count];
        let mut classes: Vec<Vec<Elem>> = vec![];
        let mut out = vec![0; n];
        for x in 0..n {
            let root = uf.find(class_of[x]);
            if renumber[root] == usize::MAX {
                renumber[root] = classes.len();
                classes.push(vec![]);
            }
            out[x] = renumber[root];
            classes[renumber[root]].push(x);
        }
        ConjugacyPartition {
            classes,
            class_of: out,
            kind,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
