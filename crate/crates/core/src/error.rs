//! Error type shared by every layer of the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
    #[error("term order is not global")]
    OrderNotGlobal,
    #[error("term order is not local")]
    OrderNotLocal,
    #[error("ideal is the unit ideal locally: generator has nonzero constant term")]
    UnitIdealLocally,
    #[error("the unit ideal has no dimension")]
    UnitIdeal,
    #[error("saturation did not stabilize within {0} iterations")]
    SaturationCap(usize),
    #[error("matrix is not homogeneous with respect to the given shifts")]
    NotHomogeneous,
    #[error("resolution is not minimal: matrix has a constant entry")]
    NotMinimal,
    #[error("requires d >= 1")]
    DimensionZero,
    #[error("coefficient index must be >= 1")]
    CoefficientIndexZero,
    #[error("invariant c must satisfy c >= 2*I")]
    TrivediInvariantTooSmall,
    #[error("module is zero: multiplicity undefined")]
    ZeroModule,
    #[error("module has positive dimension: length is infinite")]
    InfiniteLength,
    #[error("not generalized Cohen-Macaulay: a lower local cohomology module has infinite length")]
    NotGeneralizedCohenMacaulay,
    #[error("unsupported: defining ideal is not homogeneous, supply an extended degree externally")]
    NonHomogeneousIdeal,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
