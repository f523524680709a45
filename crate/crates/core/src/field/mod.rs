//! Exact arithmetic: arbitrary-precision rationals and cyclotomic numbers.

mod cyclotomic;
mod numbers;

pub use cyclotomic::{galois_group, Cyclotomic, GaloisMap};
pub use numbers::{euler_phi, format_rat, lcm_u64, mobius, parse_rat, prime_factors, Rat};
