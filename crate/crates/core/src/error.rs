use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("exponent off the quarter-integer grid: {0}")]
    OffGrid(String),
    #[error("inadmissible labels: {0}")]
    Inadmissible(String),
    #[error("color {color} not covered (table stops at {max})")]
    MissingColor { color: u32, max: u32 },
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no stable quasi-quadratic fit: {0}")]
    NoStableFit(String),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("no catalog surface: {0}")]
    NoCatalogSurface(String),
    #[error("matching condition has no positive solution")]
    UnsolvableMatching,
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("diagram has {0} crossings, above the cap")]
    TooManyCrossings(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
