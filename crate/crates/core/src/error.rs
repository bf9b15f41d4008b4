use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} out of range (1..=16)")]
    VertexCount(usize),
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("circumference {k} out of range for {n} vertices (need 2 <= k <= n)")]
    CircumferenceDomain { n: usize, k: usize },
    #[error("minor size {k} out of range (1..={n})")]
    MinorSize { n: usize, k: usize },
    #[error("variable a{0}{1} has no assigned value")]
    MissingVariable(usize, usize),
    #[error("variable a{0}{1} must be strictly positive")]
    NonPositiveValue(usize, usize),
    #[error("{edges} edges exceed the sign-enumeration budget of {max}")]
    EdgeBudget { edges: usize, max: usize },
    #[error("expected a degree-{expected} polynomial, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("expected a {expected}x{expected} pattern, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("parameter {0} must be strictly positive")]
    NonPositiveParameter(&'static str),
    #[error("matrix entry ({0}, {1}) does not conform to the sign pattern")]
    SignConformance(usize, usize),
    #[error("matrix is {rows}x{cols}, pattern is {n}x{n}")]
    ShapeMismatch { rows: usize, cols: usize, n: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("fixture {0} survives every filter")]
    FixtureSurvived(usize),
    #[error("unsupported arguments: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
