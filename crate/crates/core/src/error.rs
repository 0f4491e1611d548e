use thiserror::Error;

/// Errors raised by the core engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}; expected p/q")]
    BadRational(String),
    #[error("empty coefficient list")]
    EmptyCoefficients,
    #[error("continued fraction {0:?} has infinite value")]
    InfiniteValue(Vec<i64>),
    #[error("move {mv} cannot be applied to {coeffs:?}")]
    IllegalSite { mv: String, coeffs: Vec<i64> },
    #[error("cannot parse move {0:?}; expected e.g. expand@1+, contract@2, append-, trim-end, prepend+, trim-start")]
    BadMove(String),
    #[error("cannot parse coefficient list {0:?}; expected b1,b2,...")]
    BadCoefficients(String),
    #[error("zero input: p = 0 has no normal form")]
    ZeroInput,
    #[error("p = {0} is odd; an even numerator is required")]
    OddP(i64),
    #[error("expected a {expected} normal form")]
    WrongKind { expected: &'static str },
    #[error("{0:?} is not a normal form (odd length, even entries at positions 3, 5, ...)")]
    NotNormalForm(Vec<i64>),
    #[error("cannot parse braid word {0:?}")]
    BadBraidWord(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("unknown form name {0:?}")]
    BadName(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("enumeration bound {0} exceeds 6")]
    BoundTooLarge(u32),
    #[error("rank {0} exceeds 4")]
    RankTooLarge(usize),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("non-integer coefficient in {0}")]
    NonIntegerCoefficient(&'static str),
    #[error("m = {0} and n = {1} have different parity")]
    ParityMismatch(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;
