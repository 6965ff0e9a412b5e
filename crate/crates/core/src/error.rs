use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must have degree at least {min}, got {got:?}")]
    DegreeTooLow { min: usize, got: Option<usize> },
    #[error("unsupported degree {0} (at most 6 is handled)")]
    UnsupportedDegree(usize),
    #[error("root finder did not converge after {iterations} iterations (max correction {max_step:e})")]
    NoConvergence { iterations: usize, max_step: f64, best: Vec<num_complex::Complex64> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate family: lambda must avoid 0 and 1")]
    DegenerateLambda,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {0} is not a double pole")]
    NotDoublePole(String),
    #[error("coincident poles")]
    CoincidentPoles,
    #[error("unknown catalog entry `{0}`")]
    UnknownMap(String),
    #[error("numeric ambiguity: cluster separation {separation:e} below tolerance {tolerance:e}; raise the precision")]
    NumericAmbiguity { separation: f64, tolerance: f64 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("malformed ribbon graph: {0}")]
    MalformedGraph(String),
    #[error("{half_edges} half-edges exceeds the enumeration cap of {cap}")]
    TooLarge { half_edges: usize, cap: usize },
    #[error("integration path passes within {distance:e} of a pole")]
    PathCollision { distance: f64 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("Newton iteration diverged: {0}; try seeding by continuation in lambda")]
    NewtonDivergence(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
