use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("rank {rank} is not valid for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("operation requires an irreducible root system")]
    NotIrreducible,
    #[error("m must be at least 1 (got {0})")]
    InvalidM(i64),
    #[error("chain is not nested at position {0}")]
    NotNested(usize),
    #[error("chain violates {violation}")]
    NotGeometric { violation: String },
    #[error("chain is not positive: the last ideal misses a simple root")]
    NotPositive,
    #[error("rank {r} outside 1..={m}")]
    RankOutOfRange { r: usize, m: usize },
    #[error("point lies outside the simplex")]
    OutsideSimplex,
    #[error("coordinates {0:?} do not describe an alcove")]
    NotAnAlcove(Vec<i64>),
    #[error("element is not the maximal alcove of a bounded dominant region")]
    NotMaximal,
    #[error("{what} exceeds the work limit {limit}")]
    ResourceLimit { what: String, limit: u64 },
    #[error("no polygon model for type {0}")]
    NoPolygonModel(String),
    #[error("operation requires rank 2, got rank {0}")]
    RankNotTwo(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = AtlasError> = std::result::Result<T, E>;
