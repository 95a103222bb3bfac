use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report. `code()` gives the stable
/// machine-readable name used in CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("denominator of {text:?} is divisible by {p}")]
    DenominatorDivisibleByP { text: String, p: u64 },
    #[error("{0} is not a supported prime")]
    InvalidPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("left Leibniz identity fails at (e{i}, e{j}, e{k}): e{i}(e{j}e{k}) = {lhs}, (e{i}e{j})e{k} + e{j}(e{i}e{k}) = {rhs}")]
    LeibnizIdentityViolation {
        i: usize,
        j: usize,
        k: usize,
        lhs: String,
        rhs: String,
    },
    #[error("Leib(A) over F_2 needs enumeration of 2^{dim} squares; cap is 2^{cap}")]
    CharTwoDimTooLarge { dim: usize, cap: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("matrix is not a derivation")]
    NotADerivation,
    #[error("subspace is not closed under multiplication")]
    NotASubalgebra,
    #[error("subspace is not contained in the ambient subalgebra")]
    NotInsideAmbient,
    #[error("input subalgebra is not subinvariant")]
    NotSubinvariantInput,
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("operation unsupported over {0}")]
    UnsupportedField(String),
    #[error("operation requires characteristic zero, field is {0}")]
    UnsupportedCharacteristic(String),
    #[error("enumeration scope exceeded: {0}")]
    ScopeExceeded(String),
    #[error("dimension {dim} is beyond the enumeration cap {cap}")]
    DimTooLargeForEnumeration { dim: usize, cap: usize },
    #[error("post-verification failed: {0}")]
    VerificationFailed(String),
    #[error("nilradical maximality sweep inconclusive: {0}")]
    MaximalityInconclusive(String),
    #[error("no Cartan subalgebra found after {trials} trials")]
    CartanSearchExhausted { trials: usize },
    #[error("left center has dimension {dim}; the tower needs Z^l(A) = 0")]
    NonzeroLeftCenter { dim: usize },
    #[error("center of dimension {center_dim} appeared at tower stage {stage}")]
    CenterAppearedMidTower { stage: usize, center_dim: usize },
    #[error("tower did not terminate within {stages} stages")]
    StageBudgetExceeded { stages: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported prime {0} for this construction")]
    UnsupportedP(u64),
    #[error("sum of all solvable ideals is not solvable")]
    SumNotSolvable,
    #[error("sum of all nilpotent ideals is not nilpotent")]
    SumNotNilpotent,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse(_) => "ParseError",
            Error::DenominatorDivisibleByP { .. } => "DenominatorDivisibleByP",
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LeibnizIdentityViolation { .. } => "LeibnizIdentityViolation",
            Error::CharTwoDimTooLarge { .. } => "CharTwoDimTooLarge",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::NotADerivation => "NotADerivation",
            Error::NotASubalgebra => "NotASubalgebra",
            Error::NotInsideAmbient => "SInsideAmbientViolated",
            Error::NotSubinvariantInput => "NotSubinvariantInput",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::UnsupportedCharacteristic(_) => "UnsupportedCharacteristic",
            Error::ScopeExceeded(_) => "ScopeExceeded",
            Error::DimTooLargeForEnumeration { .. } => "DimTooLargeForEnumeration",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::MaximalityInconclusive(_) => "MaximalityInconclusive",
            Error::CartanSearchExhausted { .. } => "CartanSearchExhausted",
            Error::NonzeroLeftCenter { .. } => "NonzeroLeftCenter",
            Error::CenterAppearedMidTower { .. } => "CenterAppearedMidTower",
            Error::StageBudgetExceeded { .. } => "StageBudgetExceeded",
            Error::InvalidParams(_) => "InvalidParams",
            Error::UnsupportedP(_) => "UnsupportedP",
            Error::SumNotSolvable => "SumNotSolvable",
            Error::SumNotNilpotent => "SumNotNilpotent",
        }
    }
}
