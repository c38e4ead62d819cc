use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit status 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope {0:?}: expected r/s, r or inf with positive integers")]
    InvalidSlope(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("invalid point {0:?}: expected x,y with nonnegative integers")]
    InvalidPoint(String),
    #[error("operation requires a finite slope")]
    InfiniteSlope,
    #[error("point {point} lies outside the sector I({slope})")]
    OutsideSector { point: String, slope: String },
    #[error("map with determinant {0} is not invertible over the integers")]
    NotUnimodular(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("order {order} cannot enumerate I({slope})")]
    IncompatibleOrder { order: String, slope: String },
    #[error("value {value} at {point} is not a nonnegative integer")]
    NonIntegerRank { point: String, value: String },
    #[error("malformed polynomial: {0}")]
    Format(String),
    #[error("offset {0} exceeds the addressable range")]
    Capacity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
