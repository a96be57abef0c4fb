use thiserror::Error;

/// Failure modes shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma-type function was evaluated at one of its poles.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// Parameters outside the domain of the requested formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// An alternating sum cancelled more digits than the working precision allows.
    #[error("precision exhausted: {digits_lost:.1} digits lost with a {working_digits}-digit working precision")]
    PrecisionExhausted { digits_lost: f64, working_digits: u32 },

    /// A convergent series did not settle within the term cap.
    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    /// Newton polishing of quadrature nodes failed.
    #[error("root finding failed: {0}")]
    Convergence(String),

    /// A crossover search ran past its upper limit.
    #[error("tolerance not reached for n <= {limit}")]
    NotReached { limit: u64 },

    /// Malformed numeric input.
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
