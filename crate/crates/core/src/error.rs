use thiserror::Error;

/// Everything that can go wrong in the library. Variant names match the
/// failure modes callers are expected to branch on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("center {0} is not a cone of the fan")]
    CenterNotInFan(String),
    #[error("stellar subdivision needs a center with at least two rays, got {0}")]
    DegenerateCenter(usize),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("malformed fan: {0}")]
    MalformedFan(String),

    #[error("a log product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("{0} has no toric model")]
    NoToricModel(String),
    #[error("not a building-set order: {0}")]
    NotABuildingSetOrder(String),
    #[error("projection onto an empty set of factors")]
    EmptyProjection,
    #[error("factor index {index} out of range for {count} factors")]
    FactorOutOfRange { index: usize, count: usize },

    #[error("h^0 of a degree {degree} line bundle on a genus {genus} curve depends on the bundle")]
    AmbiguousDegree { genus: u32, degree: i64 },
    #[error("exterior power {q} out of range 0..={rank}")]
    WedgeOutOfRange { q: i64, rank: u64 },
    #[error("{0} is not proper")]
    NonProper(String),
    #[error("bundle lives on {found}, expected {expected}")]
    BaseMismatch { expected: String, found: String },

    #[error("unsupported composition: {0}")]
    UnsupportedComposition(String),
    #[error("unsupported adjoint: {0}")]
    UnsupportedAdjoint(String),
    #[error("unsupported log morphism: {0}")]
    UnsupportedMorphism(String),
    #[error("derived intersection is not formal: {0}")]
    FormalityUnavailable(String),
    #[error("log Hochschild homology of {0} is not k[0]")]
    UnsupportedHHShape(String),
    #[error("kernel is not supported on the log diagonal: {0}")]
    NotDiagonalSupported(String),
    #[error("pair mismatch: expected {expected}, found {found}")]
    PairMismatch { expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
