//! Fixed-size bitset over element indices.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
    len: usize,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_iter(universe: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ElemSet::new(universe);
        for x in it {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    /// Returns true if `x` was not present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
