use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("2^{p} - 1 is not prime (Lucas-Lehmer test failed), so {p} is not a Mersenne exponent")]
    NotMersenne { p: u32 },

    #[error("m = {m} is outside [1, {n}]")]
    OutOfRange { m: BigUint, n: BigUint },

    #[error("{what} exceeds the supported ceiling {ceiling}")]
    Capability { what: String, ceiling: String },
}

impl Error {
    /// Stable machine-readable identifier used in structured output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain_error",
            Error::NotMersenne { .. } => "not_mersenne",
            Error::OutOfRange { .. } => "m_out_of_range",
            Error::Capability { .. } => "capability",
        }
    }
}
