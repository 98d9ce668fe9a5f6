//! Exact computation of Green-function tables for Weyl groups.
//!
//! The pipeline is: a [`weyl::WeylDatum`] (character table and reflection
//! data) gives graded multiplicities in the coinvariant algebra
//! ([`coinvariants`]), from which the Ω matrix is built; together with the
//! orbit data of a [`springer::SpringerDatum`], [`solver::solve`] recovers
//! the unique `P` and `Λ` with `P Λ Pᵗ = Ω`.

pub mod coinvariants;
pub mod files;
pub mod laurent;
pub mod matrix;
pub mod partition;
pub mod solver;
pub mod springer;
pub mod weyl;

pub use coinvariants::{build_omega, GradedMultiplicity, OmegaMatrix};
pub use laurent::{AlgebraError, LaurentPoly, RationalFunction};
pub use matrix::Matrix;
pub use partition::Partition;
pub use solver::{normalize, solve, verify, Normalization, SolutionPair, SolveError, VerifyReport};
pub use springer::{block_structure, generate_type_a, BlockStructure, SpringerDatum};
pub use weyl::{generate_symmetric_group, DatumError, WeylDatum};
