//! Strong exchange equations for minuscule Coxeter matroids: tropical
//! equation families, exchange-property checkers, the minuscule orbit
//! polytopes, exact quadrics and realization oracles.

pub mod bitset;
pub mod checks;
pub mod combinatorics;
pub mod equations;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod polytopes;
pub mod quadrics;
pub mod realization;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
