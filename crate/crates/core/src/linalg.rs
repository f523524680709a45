//! Fraction-free Gaussian elimination (Bareiss) over the rationals.
//!
//! Rows are scaled to integers first, so all elimination happens in `BigInt`
//! and every intermediate entry is a minor of the scaled matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::Rat;

/// Scales a rational row to a primitive-free integer row (same row space).
fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let den = row
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&den / r.denom())).collect()
}

/// Bareiss elimination in place. Returns the pivot columns; the first
/// `pivots.len()` rows are then in echelon form.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = vec![];
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                // Row i still needs the rescale that keeps divisions exact.
                for j in c + 1..cols {
                    if !m[i][j].is_zero() {
                        m[i][j] = &m[i][j] * &m[r][c] / &prev;
                    }
                }
                continue;
            }
            let (top, rest) = m.split_at_mut(i);
            let pivot_row = &top[r];
            let row = &mut rest[0];
            for j in c + 1..cols {
                let v = &row[j] * &pivot_row[c] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over `Q` of the given rows.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss(&mut m, cols).len()
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full)
        })
        .collect();
    let pivots = bareiss(&mut m, n + 1);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= &x[j] * Rat::from_integer(m[i][j].clone());
            }
        }
        x[i] = acc / Rat::from_integer(m[i][i].clone());
    }
    Some(x)
}
