use thiserror::Error;

use crate::liealg::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simple type {letter}{rank}: {reason}")]
    InvalidType {
        letter: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WeightRank {
        weight: Weight,
        got: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("invalid facet {nodes:?}: {reason}")]
    InvalidFacet {
        nodes: Vec<usize>,
        reason: &'static str,
    },

    #[error("level {level} is not a multiple of {required}")]
    LevelNotMultiple { level: u32, required: i64 },

    #[error("level must be positive")]
    ZeroLevel,

    #[error("no marked points")]
    NoPoints,

    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    #[error("no value given for point {0:?}")]
    MissingPoint(String),

    #[error("weight {weight} lies outside P_c at level {level}")]
    OutsideLevel { weight: Weight, level: u32 },

    #[error(
        "weight {weight} at point {point:?} is not admissible for facet {facet:?} at level {level}"
    )]
    Inadmissible {
        point: String,
        weight: Weight,
        facet: Vec<usize>,
        level: u32,
    },

    #[error("vector at point {point:?} has {got} entries but the facet has {expected} nodes")]
    IndexMismatch {
        point: String,
        got: usize,
        expected: usize,
    },

    #[error("line bundle invariant violated: {0}")]
    InvalidBundle(String),

    #[error("boundary weight at point {point:?} is not supported on the facet's finite nodes")]
    BoundarySupport { point: String },

    #[error("Weyl group has more than {limit} elements")]
    WeylGroupTooLarge { limit: usize },

    #[error("fusion table for {table} used with {requested}")]
    TableMismatch { table: String, requested: String },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

impl Error {
    /// Internal errors signal a bug in the library rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::OracleDisagreement(_) | Error::Overflow(_))
    }
}
