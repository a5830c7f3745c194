use thiserror::Error;

/// Errors reported by the exact-arithmetic and geometry layers.
///
/// Variants split into three groups: precondition violations (bad input),
/// parse errors (carrying a location), and internal-inconsistency errors
/// that signal an arithmetic bug rather than a bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,
    #[error("field order must be positive")]
    InvalidOrder,
    #[error("field order {0} exceeds the supported maximum of 4096")]
    OrderTooLarge(u64),
    #[error("field order {0} is not divisible by 4, so i is not available")]
    OrderNotDivisibleBy4(u64),
    #[error("element of order {order} does not embed into order {target}")]
    IncompatibleOrder { order: u64, target: u64 },
    #[error("element is not fixed by conjugation; apply re() or im() first")]
    NotRealElement,
    #[error("interval sign determination exhausted its precision budget at {0} bits")]
    PrecisionExhausted(u32),

    #[error("projective point has all coordinates zero")]
    ZeroPoint,
    #[error("projective line has all coefficients zero")]
    ZeroLine,
    #[error("join of identical points is undefined")]
    IdenticalPoints,
    #[error("meet of identical lines is undefined")]
    IdenticalLines,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("point does not lie on the line")]
    NotIncident,

    #[error("configuration must contain at least one point")]
    EmptyConfiguration,
    #[error("configuration needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("configuration field order {0} is not a multiple of 4")]
    OrderNotMultipleOf4(u64),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("line counts are invalid: {0}")]
    InvalidCounts(String),
    #[error("configuration is collinear")]
    CollinearConfiguration,
    #[error("pencil through the apex is degenerate (fewer than 2 lines)")]
    DegeneratePencil,
    #[error("configuration consists only of the apex")]
    ApexOnly,
    #[error("no generic direction chosen; run choose_generic_direction first")]
    DirectionNotChosen,
    #[error("genericity violated: {0}")]
    GenericityViolation(String),
    #[error("generic-direction search exhausted its enumeration budget")]
    DirectionSearchExhausted,
    #[error("slope is not an infinite point of this pencil")]
    UnknownSlope,
    #[error("pencil has no finite points")]
    NoFinitePoints,

    #[error("envelope has no edges")]
    EmptyEnvelope,
    #[error("cycle must list at least 3 vertices")]
    OpenCycle,
    #[error("polygon is not simple: {0}")]
    NonSimplePolygon(String),

    #[error("vertex count {0} is outside the supported range 1..=8")]
    ForestOrderOutOfRange(usize),
    #[error("invalid target graph: {0}")]
    InvalidTarget(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
