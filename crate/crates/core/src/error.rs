use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("b must be nonzero")]
    ZeroInfectivity,
    #[error("m must be nonzero")]
    ZeroDeathRate,
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("cannot parse {0:?} as a polynomial")]
    ParsePolynomial(String),
    #[error("point ({0}, {1}) is not a singular point of the field")]
    NotSingular(String, String),
    #[error("classification requires a nonzero determinant, got delta = 0")]
    ZeroDeterminant,
    #[error("matrix is not semi-hyperbolic (det = {det}, trace = {trace})")]
    NotSemiHyperbolic { det: String, trace: String },
    #[error("matrix matches neither saddle-node shape at infinity")]
    NotSaddleNodeShape,
    #[error("the equator consists entirely of singular points")]
    EquatorOfSingularities,
    #[error("{0} infinite singular direction(s) are irrational and cannot be located exactly")]
    IrrationalDirection(usize),
    #[error("candidate curve must be a non-constant polynomial")]
    ConstantCandidate,
    #[error("invariant-line search needs a quadratic field, got degree {0}")]
    NotQuadratic(u32),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
