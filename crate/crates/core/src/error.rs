use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("fractional order {0} is outside the supported range")]
    InvalidOrder(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid alpha partition: {0}")]
    InvalidPartition(String),

    #[error("invalid memory policy: {0}")]
    InvalidPolicy(String),

    #[error(
        "iteration did not converge after {iterations} iterations (last update {last_update:e})"
    )]
    NonConvergence { iterations: usize, last_update: f64 },

    #[error("divergence detected: |value| = {magnitude:e} exceeds the guard")]
    Diverged { magnitude: f64 },

    #[error("singular shooting combination (denominator {denominator:e})")]
    SingularCombination { denominator: f64 },

    #[error("singular linear system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
