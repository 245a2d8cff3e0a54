use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({0})")]
    ReduciblePolynomial(u32),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("no Conway polynomial in table for p={p}, t={t}")]
    NoTableEntry { p: u32, t: u32 },
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("{e} does not divide {t}")]
    BadDivisor { e: u32, t: u32 },
    #[error("out of range: {0}")]
    Range(String),
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("projection centre lies in the point set")]
    QInB,
    #[error("projection centre lies in the target hyperplane")]
    QInH,
    #[error("target is not a hyperplane")]
    NotHyperplane,
    #[error("points do not form a subline")]
    NotASubline,
    #[error("point is not on a spread element of the subline")]
    XNotOnElement,
    #[error("point set is not blocking")]
    NotBlocking,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("gap violation: subspace meets the set in {size} points (s={s})")]
    GapViolation { size: usize, s: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("no subline secant")]
    NoSublineSecant,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
