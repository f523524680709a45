//! Exact computations in rational and integral group rings of finite groups:
//! Shoda pairs, primitive central idempotents, Bass-type central units and the
//! rank of the central unit group.

pub mod catalog;
pub mod config;
pub mod elemset;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod linalg;
pub mod qalgebra;
pub mod rank;
pub mod report;
pub mod shoda;
pub mod units;

pub use config::AnalysisConfig;
pub use error::{Error, Result};
pub use group::FiniteGroup;
