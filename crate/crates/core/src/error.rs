use thiserror::Error;

/// Failure classes for a general-position check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionFailure {
    /// Two segment projections share a subsegment.
    Overlap,
    /// Three or more segments project through one point.
    TriplePoint,
    /// A crossing or a segment passes through a projected vertex.
    ThroughVertex,
    /// Two segments meet non-transversally (touching at a point).
    NonTransverse,
    /// Two vertices project to the same point.
    CoincidentVertices,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("projection is not generic ({class:?}) at edges {edges:?}")]
    GenericPositionViolation {
        class: PositionFailure,
        edges: Vec<usize>,
    },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("coordinates out of supported range: {0}")]
    CoordinateRange(String),
    #[error("resample budget exhausted after {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error("fixture degenerate: {0}")]
    FixtureDegenerate(String),
    #[error("twist multiplicity {requested} exceeds expansion cap {cap}")]
    ExpansionCapExceeded { requested: String, cap: u64 },
    #[error("edges {0} and {1} share an endpoint")]
    SharedEndpoint(usize, usize),
    #[error("edge weights are missing or not pairwise distinct")]
    NonuniqueWeights,
    #[error("cycles are not vertex-disjoint")]
    CyclesNotDisjoint,
    #[error("signed crossing sum {0} is odd")]
    ParityError(i64),
    #[error("walk is not a simple closed curve: {0}")]
    NotAKnot(String),
    #[error("diagram has {crossings} crossings, oracle cap is {cap}")]
    OracleCapExceeded { crossings: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad matrix shape: {0}")]
    BadShape(String),
    #[error("column {0} contains no 1")]
    ZeroColumn(usize),
    #[error("symmetric difference is not a single cycle: {0}")]
    NotASingleCycle(String),
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("connecting-cycle spec broken: {0}")]
    SpecBroken(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error("Taniyama-Yasuhara bound violated: sum {sum} < {bound}")]
    TyViolation { sum: i64, bound: i64 },
    #[error("not found")]
    NotFound,
    #[error("linking pattern is not complete: components {0} and {1} have lk = 0")]
    PatternNotComplete(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for reports and exit handling.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GenericPositionViolation { .. } => "GENERIC_POSITION_VIOLATION",
            Error::InvalidEmbedding(_) => "INVALID_EMBEDDING",
            Error::InvalidGraph(_) => "INVALID_GRAPH",
            Error::CoordinateRange(_) => "COORDINATE_RANGE",
            Error::RetryExhausted { .. } => "RETRY_EXHAUSTED",
            Error::FixtureDegenerate(_) => "FIXTURE_DEGENERATE",
            Error::ExpansionCapExceeded { .. } => "EXPANSION_CAP_EXCEEDED",
            Error::SharedEndpoint(..) => "SHARED_ENDPOINT",
            Error::NonuniqueWeights => "NONUNIQUE_WEIGHTS",
            Error::CyclesNotDisjoint => "CYCLES_NOT_DISJOINT",
            Error::ParityError(_) => "PARITY_ERROR",
            Error::NotAKnot(_) => "NOT_A_KNOT",
            Error::OracleCapExceeded { .. } => "ORACLE_CAP_EXCEEDED",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::BadShape(_) => "BAD_SHAPE",
            Error::ZeroColumn(_) => "ZERO_COLUMN",
            Error::NotASingleCycle(_) => "NOT_A_SINGLE_CYCLE",
            Error::InconsistentOrientation(_) => "INCONSISTENT_ORIENTATION",
            Error::SpecBroken(_) => "SPEC_BROKEN",
            Error::HypothesisViolation(_) => "HYPOTHESIS_VIOLATION",
            Error::NoWitness(_) => "NO_WITNESS",
            Error::TyViolation { .. } => "TY_VIOLATION",
            Error::NotFound => "NOT_FOUND",
            Error::PatternNotComplete(..) => "PATTERN_NOT_COMPLETE",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
