use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// An element that had to be a unit shares the factor `gcd` with the modulus.
    #[error("element is not invertible modulo N (gcd = {gcd})")]
    NotInvertible { gcd: BigUint },

    #[error("operands live in different residue rings")]
    ModulusMismatch,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    /// The search would materialise more giant-step records than allowed.
    #[error("search size {requested} exceeds the configured limit {limit}")]
    SearchLimit { requested: u128, limit: u64 },
}
