use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("unknown cyclotomic constant `{0}`")]
    UnknownConstant(String),
    #[error("series vanishes up to order {order} and cannot be inverted")]
    NonInvertible { order: i64 },
    #[error("pole: {0}")]
    PoleAtFactor(String),
    #[error("Pochhammer start exponent {0} is negative")]
    NegativeExponent(i64),
    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("monomial coefficient must be nonzero")]
    ZeroMonomial,
    #[error("could not reach order {target}: precision stalled at {reached}")]
    Precision { target: i64, reached: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
