use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),

    /// A simplex of the sub-complex has no counterpart in the full complex, so
    /// the inclusion chain map is undefined.
    #[error("simplex {simplex:?} of the sub-complex is missing from the full complex")]
    MissingSimplex { simplex: Vec<u32> },

    #[error("Rips complex at threshold {threshold} exceeds {limit} simplices")]
    ComplexTooLarge { threshold: f64, limit: usize },

    #[error("boundary maps do not compose to zero: (d_{k} o d_{k_plus_one}) has a nonzero column {column}")]
    NotAChainComplex { k: usize, k_plus_one: usize, column: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
