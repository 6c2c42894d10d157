use thiserror::Error;

/// Errors raised by model construction, likelihood evaluation, estimation
/// and simulation.
///
/// Likelihood objectives themselves do not error on infeasible parameter
/// values; they return `-inf` so that optimizers treat the point as a
/// rejected step. Errors are reserved for contract violations.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible domain (for example sigma <= 0).
    #[error("parameter domain: {0}")]
    ParameterDomain(String),
    /// The marginal transform was requested at or outside the support.
    #[error("transform domain: {0}")]
    TransformDomain(String),
    /// An observation lies below the censoring threshold.
    #[error("censoring violation: {0}")]
    CensoringViolation(String),
    /// Invalid configuration (window sizes, strategy parameters, counts).
    #[error("config: {0}")]
    Config(String),
    /// Malformed or inconsistent input data.
    #[error("data: {0}")]
    Data(String),
    /// The objective cannot identify the parameters from this sample.
    #[error("non-identifiable: {0}")]
    NonIdentifiable(String),
    /// The storm point cap was hit before the simulation was exact.
    #[error("resolution exceeded: {0}")]
    ResolutionExceeded(String),
    /// A Monte-Carlo run was too short to produce the requested statistic.
    #[error("insufficient simulation: {0}")]
    InsufficientSimulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
