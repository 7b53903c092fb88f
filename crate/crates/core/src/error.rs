use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("mixed primes in one computation: {0} and {1}")]
    MixedPrimes(u32, u32),
    #[error("cell (s={s}, t={t}, w={w}) lies outside the computed window")]
    OutOfWindow { s: usize, t: i64, w: u32 },
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("boundary of a boundary is nonzero at (s={s}, t={t}, w={w})")]
    BoundarySquare { s: usize, t: i64, w: u32 },
    #[error("law violated: {0}")]
    Law(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
