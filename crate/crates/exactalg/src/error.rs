use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not eliminable: polynomial has degree zero in variable {0}")]
    NotEliminable(usize),
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("variables differ: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("root finding did not converge at {prec} bits; retry with higher precision")]
    NoConvergence { prec: u32 },
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("precision must be at least 64 bits, got {0}")]
    LowPrecision(u32),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
