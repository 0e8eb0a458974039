//! Finite Γ-semirings, their operator semirings, and fuzzy ideal transfer.
//!
//! Structures are dense tables over small carriers. Fuzzy subsets take
//! grades in a finite chain of rationals, so every lattice operation is
//! exact and every family can be enumerated.

pub mod config;
pub mod error;
pub mod format;
pub mod fuzzy;
pub mod grade;
pub mod matrix;
pub mod operators;
pub mod par;
pub mod structure;
pub mod transfer;
pub mod verify;

pub use config::{Caps, ReportFormat, RunConfig};
pub use error::{Error, Result};
pub use fuzzy::{CrispSubset, FuzzySubset, IdealKind};
pub use grade::{Grade, GradeChain};
pub use operators::{build_operator_semiring, OperatorSemiring, Side};
pub use structure::{FiniteStructure, GammaSemiring, Semiring};
