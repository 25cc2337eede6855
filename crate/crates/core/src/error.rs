//! Error type shared by every module of the engine.

use thiserror::Error;

use crate::ray_constraints::RayType;

/// Failure modes of the engine.
///
/// Failed integrality or domain checks inside the case solvers are pruning
/// events and never surface as errors; these variants are reserved for
/// invalid requests and encoding bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands of a lattice operation live in lattices of different rank.
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// Only Picard ranks 2 and 3 are modelled.
    #[error("unsupported Picard rank {0}")]
    UnsupportedRank(usize),

    /// A numerical constraint has no admissible value.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A ray descriptor lacks a field its type requires.
    #[error("incomplete ray spec: {ray_type} requires `{field}`")]
    IncompleteSpec { ray_type: RayType, field: &'static str },

    /// Fano index outside the supported set.
    #[error("unsupported index r = {0}")]
    UnsupportedIndex(i64),

    /// Division by zero.
    #[error("division by zero in {0}")]
    Division(&'static str),

    /// An odd value where Riemann-Roch forces an even one.
    #[error("parity violated: {0}")]
    Parity(String),

    /// The encoded constraints contradict each other.
    #[error("inconsistent encoding: {0}")]
    Inconsistency(String),

    /// Request outside the classified range.
    #[error("unsupported scope: {0}")]
    Scope(String),

    /// Integer overflow in exact arithmetic.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Unknown output format name.
    #[error("unknown format `{0}` (expected json, csv or markdown)")]
    UnknownFormat(String),

    /// Unknown ray type tag.
    #[error("unknown ray type `{0}`")]
    UnknownRayType(String),

    /// Ground-truth data could not be read or is malformed.
    #[error("ground truth: {0}")]
    GroundTruth(String),

    /// Serialization failure.
    #[error("serialization: {0}")]
    Serialization(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
