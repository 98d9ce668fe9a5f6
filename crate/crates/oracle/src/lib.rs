//! Independent checks for the Green-function pipeline: Kostka-Foulkes
//! polynomials from charge, a brute-force coinvariant expander, and a
//! solver-uniqueness harness.

pub mod bridge;
pub mod coinvariant;
pub mod suite;
pub mod tableaux;
pub mod uniqueness;

use green_core::coinvariants::CoinvariantError;
use green_core::SolveError;
use thiserror::Error;

pub use bridge::{kostka_bridge, BridgeConvention, BridgeMismatch};
pub use coinvariant::{coinvariant_expand, CoinvariantExpansion};
pub use suite::{oracle_checks, run_check, CheckLine, DEFAULT_SEEDS};
pub use tableaux::{charge, enumerate_ssyt, kostka_foulkes, kostka_number, Ssyt};
pub use uniqueness::{uniqueness_harness, UniquenessReport};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("invalid datum: {0}")]
    Datum(String),
    #[error("oracle computation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("uniqueness check needs at least 2 seeds, got {0}")]
    TooFewSeeds(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Coinvariant(#[from] CoinvariantError),
}
