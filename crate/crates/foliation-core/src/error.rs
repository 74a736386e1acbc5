use thiserror::Error;

/// Crate-wide error type. Variants carry the data named by the operation
/// contracts (syntax position, offending term, ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("`{var}^{power}` does not divide term `{term}`")]
    NotDivisible {
        var: String,
        power: u32,
        term: String,
    },
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("constant first integral")]
    ConstantFirstIntegral,
    #[error("unreduced generator: coefficients share the factor in `{var}`")]
    UnreducedGenerator { var: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("curve `{var} = 0` is not invariant")]
    CurveNotInvariant { var: String },
    #[error("undefined index: {0}")]
    UndefinedIndex(String),
    #[error("residue not certified rational: {0}")]
    IrrationalResidue(String),
    #[error("linear part is nilpotent or degenerate")]
    NilpotentOrDegenerate,
    #[error("origin is a regular point")]
    RegularOrigin,
    #[error("divisor component `{var} = 0` not preserved by shear")]
    DivisorNotPreserved { var: String },
    #[error("component `{var} = 0` is invariant, not dicritical")]
    ComponentInvariant { var: String },
    #[error("center not admissible: {0}")]
    InadmissibleCenter(String),
    #[error("normal crossings violation: {0}")]
    NormalCrossings(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not bi-homogeneous: {0}")]
    NotBiHomogeneous(String),
    #[error("Euler relation violated: {0}")]
    EulerViolation(String),
    #[error("coefficients share a common factor: {0}")]
    CommonFactor(String),
    #[error("chart `{0}` not found")]
    ChartNotFound(String),
    #[error("ambiguous chart reference: {0}")]
    AmbiguousChart(String),
    #[error("invalid script: {0}")]
    InvalidScript(String),
    #[error("unknown registry germ `{0}`")]
    UnknownRegistryGerm(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
