use thiserror::Error;

/// Errors raised by channel construction, payoff evaluation and predictions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coalition size must be at least 1")]
    EmptyCoalition,

    #[error("coalition size {0} is even; majority and minority voting need odd c")]
    EvenCoalition(usize),

    #[error("noise rate {0} outside [0, 1)")]
    BadRate(f64),

    #[error("threshold l={lower}, u={upper} invalid for c={c} (need 0 <= l < u <= c)")]
    BadThreshold { lower: usize, upper: usize, c: usize },

    #[error("invalid channel probabilities: {0}")]
    BadProbability(&'static str),

    #[error("value {0} outside [0, 1]")]
    DomainError(f64),

    #[error("bias {0} must lie strictly inside (0, 1)")]
    BadBias(f64),

    #[error("channel must satisfy the marking assumption (theta_0 = 0, theta_c = 1)")]
    MarkingRequired,

    #[error("no closed-form prediction available for {0}")]
    Unavailable(&'static str),

    #[error("capacity must be positive and finite, got {0}")]
    DegenerateCapacity(f64),

    #[error("population must be at least 2, got {0}")]
    BadPopulation(u64),

    #[error("invalid optimizer options: {0}")]
    BadOptions(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
