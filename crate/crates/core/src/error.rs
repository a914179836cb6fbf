use thiserror::Error;

/// Every failure the library can report.
///
/// Variants name the violated precondition so that callers (and the CLI)
/// can map them to distinct diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("{0}")]
    UnsupportedCharacteristic(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable '{name}' at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("coefficient {0} is not an element of the field")]
    CoefficientNotInField(String),
    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("point is not on the hypersurface")]
    PointNotOnHypersurface,
    #[error("point is singular on the hypersurface")]
    SingularPoint,
    #[error("linear subspace parametrization is not of full column rank")]
    RankDeficient,
    #[error("operation requires a finite field")]
    RequiresFiniteField,
    #[error("rational map has all coordinates zero")]
    ZeroMap,
    #[error("map undefined along the source hypersurface: {0}")]
    UndefinedAlongSource(String),
    #[error("composition undefined as rational map")]
    CompositionUndefined,
    #[error("zero coefficient at position {0}")]
    ZeroCoefficient(usize),
    #[error("point lies in the target hyperplane")]
    PointInHyperplane,
    #[error("polynomials share a common factor: {0}")]
    CommonFactor(String),
    #[error("polynomial does not vanish on the coordinate planes: monomial {0}")]
    NotVanishingOnPlanes(String),
    #[error("line through the points is contained in the curve")]
    LineContained,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("{0}")]
    MissingRoots(String),
    #[error("degenerate tensor: {0}")]
    DegenerateTensor(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("chart {0} is undefined at the point (derivative vanishes); use another chart")]
    ChartUndefined(usize),
    #[error("invalid tangent frame: {0}")]
    InvalidFrame(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
