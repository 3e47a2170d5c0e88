use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the algebra, quadrature, transform and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero octonion")]
    ZeroDivision,

    #[error("input lies on the real axis (imaginary norm {imag_norm:e}); I(x) is undefined")]
    RealAxisInput { imag_norm: f64 },

    #[error("invalid polar decomposition: {0}")]
    InvalidPolar(String),

    #[error("result overflows the double-precision range")]
    Overflow,

    #[error("logarithm of zero")]
    ZeroInput,

    #[error("argument {0} lies on the negative real axis; no principal branch")]
    NegativeRealAxis(f64),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("invalid integrand profile: {0}")]
    InvalidProfile(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("x0 = {x0} is outside the region of convergence (requires x0 > {bound})")]
    RegionOfConvergence { x0: f64, bound: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("{excluded} of {requested} points excluded (limit 10%)")]
    TooManyExclusions { excluded: usize, requested: usize },

    #[error("unknown name: {0}")]
    UnknownName(String),
}
