use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term must be 1")]
    NonUnitConstant,
    #[error("not parity-homogeneous")]
    NotParityHomogeneous,
    #[error("depth exceeds series order")]
    DepthExceedsOrder,
    #[error("not a proper Riordan array")]
    NotProperRiordan,
    #[error("A-sequence must start with 1")]
    UnsupportedLeadingA,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not real-rooted: {distinct_real} distinct real roots, {real_with_multiplicity} with multiplicity, degree {degree}")]
    NotRealRooted {
        distinct_real: usize,
        real_with_multiplicity: usize,
        degree: usize,
    },
    #[error("polynomial has a repeated root")]
    NotSquarefree,
    #[error("degree mismatch: deg g = {g}, deg f = {f}")]
    DegreeMismatch { g: i64, f: i64 },
    #[error("negative entry at index {0}")]
    NegativeEntry(usize),
    #[error("nonpositive entry at index {0}")]
    NonPositiveEntry(usize),
    #[error("parameters must be positive")]
    NonPositiveParameter,
    #[error("coefficient is not exactly divisible in this ring")]
    InexactDivision,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("identity violated: {name}: lhs = {lhs}, rhs = {rhs}")]
    TheoremViolation {
        name: String,
        lhs: String,
        rhs: String,
    },
}

impl Error {
    pub(crate) fn violation(
        name: impl Into<String>,
        lhs: impl std::fmt::Display,
        rhs: impl std::fmt::Display,
    ) -> Self {
        Error::TheoremViolation {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}
