use thiserror::Error;

use crate::dynkin::DynkinKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal rank {rank} for Dynkin type {kind}")]
    IllegalRank { kind: DynkinKind, rank: usize },

    #[error("illegal group: {0}")]
    IllegalGroup(String),

    #[error("group is not weakly admissible: g^{power} fails at vertex ({column}, {vertex})")]
    NotWeaklyAdmissible {
        power: i64,
        column: i64,
        vertex: usize,
    },

    #[error("Dynkin type {0} has no classical label scheme")]
    NotClassicalType(DynkinKind),

    #[error("label [{0} {1}] is not a vertex label of this quiver")]
    UnknownLabel(u32, u32),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("vertex {0} has no translate inside the quiver")]
    MissingTranslate(usize),

    #[error("not a configuration: {0}")]
    InvalidConfiguration(String),

    #[error("relation is not a {expected} 2-Brauer relation")]
    WrongFamily { expected: &'static str },

    #[error("configuration is in the wrong type-D class: {0}")]
    WrongClass(String),

    #[error("set is not stable under the group: vertex {0} maps outside it")]
    NotGStable(usize),

    #[error("theta recursion did not terminate within {cap} steps")]
    NonTerminating { cap: usize },

    #[error("last nonzero theta row of vertex {0} is not a single unit vertex")]
    DegenerateFinalRow(usize),

    #[error("theta support of base vertex reached the window boundary")]
    WindowClipped,

    #[error("coefficient overflow in theta recursion")]
    Overflow,

    #[error("{kind}: expected {expected} configurations, found {found}")]
    CountMismatch {
        kind: DynkinKind,
        expected: u64,
        found: u64,
    },

    #[error("time budget exhausted after {nodes} search nodes ({found} configurations so far)")]
    TimeBudgetExceeded { nodes: u64, found: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
