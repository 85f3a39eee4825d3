//! Error type shared by all numeric modules.

use std::fmt;

/// Errors raised by operators, quadrature and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma/digamma evaluated at a non-positive integer.
    Pole { x: f64 },
    /// |Gamma(x)| exceeds the representable range.
    Overflow { x: f64 },
    /// Grid has too few intervals for the requested stencil.
    GridTooCoarse { n: usize, min: usize },
    /// A flagged singular endpoint cannot be handled by the requested rule.
    SingularEndpoint(&'static str),
    /// Fractional order outside the admissible range of the operation.
    OrderOutOfRange { alpha: f64, context: &'static str },
    /// The exact power-law result is not representable as a power path.
    NotRepresentable(&'static str),
    /// Argument outside the function's domain.
    Domain(&'static str),
    /// Endpoint singularity too strong to integrate.
    NonIntegrable { exponent: f64 },
    /// Series or iteration failed to reach the requested tolerance.
    NoConvergence(&'static str),
    /// No sign change found on the scanned bracket.
    NoBracket { lo: f64, hi: f64 },
    /// Path violates a boundary condition of the admissible set.
    BoundaryViolation { endpoint: f64, expected: f64, actual: f64 },
    /// Supplied family is not stationary enough for the identity to apply.
    StationarityViolation { residual: f64, threshold: f64 },
    /// Scenario parameters outside the example's validity region.
    ValidityRegion(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { x } => write!(f, "pole at non-positive integer argument {x}"),
            Error::Overflow { x } => write!(f, "gamma overflow at argument {x}"),
            Error::GridTooCoarse { n, min } => {
                write!(f, "grid has {n} intervals, operation needs at least {min}")
            }
            Error::SingularEndpoint(what) => write!(f, "singular endpoint: {what}"),
            Error::OrderOutOfRange { alpha, context } => {
                write!(f, "order alpha={alpha} out of range for {context}")
            }
            Error::NotRepresentable(what) => write!(f, "not representable: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NonIntegrable { exponent } => {
                write!(f, "endpoint singularity u^-{exponent} is not integrable")
            }
            Error::NoConvergence(what) => write!(f, "no convergence: {what}"),
            Error::NoBracket { lo, hi } => {
                write!(f, "no sign change found on [{lo}, {hi}]")
            }
            Error::BoundaryViolation { endpoint, expected, actual } => write!(
                f,
                "boundary condition violated at t={endpoint}: expected {expected}, got {actual}"
            ),
            Error::StationarityViolation { residual, threshold } => write!(
                f,
                "family is not stationary: residual {residual} exceeds threshold {threshold}"
            ),
            Error::ValidityRegion(what) => write!(f, "outside validity region: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
