use crate::coeff::ArithError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    /// Bad arguments: zero divisors, empty generator lists, mismatched ambients.
    #[error("usage error: {0}")]
    Usage(String),
    /// A generator with nonzero constant term: the ideal is the whole ring.
    #[error("the ideal contains a unit, so it is the whole ring")]
    WholeRing,
    /// The mathematical hypothesis of a criterion does not hold.
    #[error("criterion inapplicable: {0}")]
    Inapplicable(String),
    /// A reduction ran past its work budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An exactness or identity check failed. Always a bug.
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
