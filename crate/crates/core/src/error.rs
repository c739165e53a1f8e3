use thiserror::Error;

/// Errors raised by the evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation at (or within guard distance of) a pole. `residue_sign` is the
    /// sign of the residue there, `0` when it is not meaningful.
    #[error("{function} has a pole at {at}")]
    Pole {
        function: &'static str,
        at: f64,
        residue_sign: i8,
    },

    #[error("{what} did not converge within {budget} steps")]
    NonConvergence { what: &'static str, budget: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no valid method: {0}")]
    NoValidMethod(String),

    /// The asymptotic series grows from its first term.
    #[error("asymptotic expansion is divergent at rho = {rho}")]
    DivergentRegime { rho: f64 },

    #[error("declared decay not observed: {0}")]
    DecayViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
