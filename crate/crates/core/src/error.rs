use std::path::PathBuf;

use thiserror::Error;

use crate::funcs::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data has {len} entries, which is not {dim}x{dim}")]
    BadShape { dim: usize, len: usize },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("eigenvalue {eigenvalue} lies outside the domain {domain} of {function}")]
    SpectrumOutOfDomain {
        eigenvalue: f64,
        domain: Domain,
        function: String,
    },

    #[error("parameter {name} = {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("weight {0} is not differentiable")]
    NotDifferentiable(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("weight takes the negative value {value} at t = {at}")]
    NegativeWeight { at: f64, value: f64 },

    #[error("{function} is neither operator convex nor operator concave")]
    UnsupportedConvexity { function: String },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl Error {
    /// Short machine-friendly tag used in campaign failure records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } | Error::BadShape { .. } => "DimensionMismatch",
            Error::NonFinite { .. } => "NonFinite",
            Error::EigenNoConvergence { .. } => "EigenNoConvergence",
            Error::SpectrumOutOfDomain { .. } => "SpectrumOutOfDomain",
            Error::ParameterOutOfRange { .. } => "ParameterOutOfRange",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotDifferentiable(_) => "NotDifferentiable",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::NegativeWeight { .. } => "NegativeWeight",
            Error::UnsupportedConvexity { .. } => "UnsupportedConvexity",
            Error::Hypothesis(_) => "Hypothesis",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::Io { .. } => "Io",
        }
    }
}
