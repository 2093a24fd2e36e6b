use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("division by a non-unit: {0}")]
    NonUnitDivision(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("unassigned parameter `{0}`")]
    UnassignedParameter(String),
    #[error("parse error at {position} in `{input}`: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("{0} is not a prime below 2^62")]
    InvalidPrime(u64),
    #[error("too many variables ({0}); at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("monomial set is not an order ideal: {0}")]
    InvalidOrderIdeal(String),
    #[error("monomial ideal is not quasi-stable within degree bound {0}")]
    NotQuasiStable(u32),
    #[error("monomial ideal has infinite colength")]
    InfiniteColength,
    #[error("the Pommaret cone of 1 is not defined")]
    ConeOfOne,
    #[error("marked set heads do not match the Pommaret basis: {0}")]
    HeadMismatch(String),
    #[error("tail of the polynomial with head {head} has a term {term} outside the order ideal")]
    TailOutsideN { head: String, term: String },
    #[error("reduction exceeded its step budget of {0}")]
    NonTermination(u64),
    #[error("marked set is not a marked basis: {0}")]
    NotABasis(String),
    #[error("modular ranks disagree: {0}")]
    ModularDisagreement(String),
    #[error("first-order families do not share a common base marked basis")]
    BaseMismatch,
    #[error("first-order family {0} fails the marked basis criterion")]
    NotFlat(usize),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("discriminant vanishes")]
    DiscriminantZero,
    #[error("b4 vanishes")]
    B4Zero,
    #[error("all coefficients of v vanish")]
    AllZeroB,
    #[error("basis does not complement the line spanned by the linear form")]
    DegenerateComplement,
    #[error("point {0} lies in the support of the ideal")]
    PointInSupport(String),
    #[error("point {0} is listed twice")]
    DuplicatePoint(String),
    #[error("no quasi-stable initial ideal after {0} coordinate changes")]
    QuasiStableNotFound(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
