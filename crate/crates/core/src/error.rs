use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants carrying an ideal render it as its generator list so that the
/// message is usable without access to the variable context.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("polynomials live in different variable contexts")]
    ContextMismatch,

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("Gröbner budget exceeded after {pairs} S-pairs (raise with --budget or POLAR_BUDGET)")]
    BudgetExceeded { pairs: u64 },

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("ideal is not zero-dimensional at the requested point")]
    NotZeroDimensional,

    #[error("UNRESOLVED_COMPONENT: residual ideal {residual} still has top-dimensional components")]
    UnresolvedComponent { residual: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("NEEDS_TEST_POINT: no rational test point found on {0}")]
    NeedsTestPoint(String),

    #[error("NON_PROPER: {0}")]
    NonProper(String),

    #[error("PRESENTATION_ERROR: {0}")]
    Presentation(String),

    #[error("function is constant on the closure of stratum {0}")]
    ConstantOnClosure(String),

    #[error("UNAUTOMATED_STRATUM: no Morse module rule applies to stratum {0}; supply an override")]
    UnautomatedStratum(String),

    #[error("GENERICITY_FAILURE: {0}")]
    GenericityFailure(String),

    #[error("missing test point for stratum {0}")]
    MissingTestPoint(String),

    #[error("POLAR_NOT_CURVE: polar set has a component of dimension {dim} coming from {source_name}")]
    PolarNotCurve { dim: usize, source_name: String },

    #[error("critical point is not isolated")]
    NonIsolated,

    #[error("hypothesis not satisfied: {0}")]
    VerdictFailure(String),

    #[error("INTERNAL_INCONSISTENCY: {0}")]
    Inconsistent(String),

    #[error("missing push-forward image for component {0}")]
    MissingImage(String),

    #[error("schema violation at {pointer}: {msg}")]
    Schema { pointer: String, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
