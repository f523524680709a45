//! Words in named generators, e.g. `x3*x4^2*x6^-1`.

use super::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// Sequence of `(generator index, exponent)` with 0-based generator indices.
pub type Word = Vec<(usize, i64)>;

/// Parses `x<i>[^<e>]` factors joined by `*` (whitespace ignored). `1`, `e`
/// and the empty string denote the identity.
pub fn parse_word(text: &str) -> Result<Word> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t == "1" || t == "e" || t == "id" {
        return Ok(vec![]);
    }
    t.split('*').map(parse_factor).collect()
}

fn parse_factor(f: &str) -> Result<(usize, i64)> {
    let bad = || Error::Parse(format!("bad word factor `{f}`"));
    let rest = f.strip_prefix('x').ok_or_else(bad)?;
    let (gen, exp) = match rest.split_once('^') {
        Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let gen: usize = gen.parse().map_err(|_| bad())?;
    if gen == 0 {
        return Err(bad());
    }
    Ok((gen - 1, exp))
}

pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&(g, e)| {
            if e == 1 {
                format!("x{}", g + 1)
            } else {
                format!("x{}^{}", g + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl FiniteGroup {
    /// Evaluates a word over [`FiniteGroup::named_generators`].
    pub fn eval_word(&self, w: &Word) -> Result<Elem> {
        let gens = self.named_generators();
        let mut acc = self.identity();
        for &(g, e) in w {
            let x = *gens.get(g).ok_or_else(|| {
                Error::Parse(format!(
                    "generator x{} not available (group has {} named generators)",
                    g + 1,
                    gens.len()
                ))
            })?;
            acc = self.mul(acc, self.pow(x, e));
        }
        Ok(acc)
    }

    pub fn eval_word_str(&self, text: &str) -> Result<Elem> {
        self.eval_word(&parse_word(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_word("x3*x4^2").unwrap(), vec![(2, 1), (3, 2)]);
        assert_eq!(parse_word(" x4^-2 * x5^3").unwrap(), vec![(3, -2), (4, 3)]);
        assert_eq!(parse_word("1").unwrap(), vec![]);
        assert!(parse_word("y2").is_err());
        assert!(parse_word("x0").is_err());
        assert!(parse_word("x2^").is_err());
        assert_eq!(format_word(&parse_word("x1*x2^-1").unwrap()), "x1*x2^-1");
    }
}
