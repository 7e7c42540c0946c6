//! Upper bounds on the size of permutation codes with minimum Kendall
//! tau-distance three, and invertibility certificates ruling out 1-perfect
//! Kendall codes.
//!
//! The crate is organised in four layers:
//!
//! * [`perm`]: permutations, the Kendall metric, balls, codes and the
//!   exhaustive small-`n` oracles.
//! * [`young`]: number partitions, Young tabloids, coset-action matrices of
//!   `T = S ∪ {1}`, standard Young tableaux and Young's seminormal form.
//! * [`ilp`]: the coset integer program, an exact LP relaxation, a
//!   certified branch-and-bound, LP-file export and bound reports.
//! * [`perfect`]: mod-p invertibility certificates and the 1-perfect-code
//!   obstruction pipelines.

pub mod arith;
pub mod config;
pub mod error;
pub mod ilp;
pub mod mm;
pub mod perfect;
pub mod perm;
pub mod young;

pub use config::Limits;
pub use error::{Error, Result};
