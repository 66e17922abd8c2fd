//! Commuting graphs of matrix semirings.
//!
//! The library enumerates finite matrix semirings `M_n(S)`, builds the graph
//! whose vertices are the non-central matrices and whose edges join commuting
//! pairs, and answers distance/diameter/connectivity questions about it with
//! exact arithmetic throughout. Finite semirings are given by explicit
//! addition and multiplication tables; the max-plus (tropical) semiring is
//! supported with exact rational scalars. On top of the graph machinery sit
//! constructive path witnesses and machine-checked verification reports for a
//! family of structural claims (`lemma-2.1` .. `thm-4.2`).

#![forbid(unsafe_code)]

pub mod centralizer;
pub mod error;
pub mod export;
pub mod graph;
pub mod matrix;
pub mod semiring;
pub mod tropical;
pub mod witness;

pub use error::Error;
pub use matrix::{AnyMatrix, BitMatrix, FinMatrix, TropMatrix};
pub use semiring::{AxiomReport, ElementId, SemiringKind, SemiringProperties, SemiringTable};
pub use tropical::TropicalScalar;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
