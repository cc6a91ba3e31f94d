use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands built against different truncations or incompatible shapes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A degree-raising operation would push coefficient mass past the
    /// truncation bound. Carries the euclidean norm of the dropped part.
    #[error("truncation overflow in {context}: lost mass {lost_mass:.3e}")]
    Truncation { context: String, lost_mass: f64 },

    /// A constructor invariant or a theorem hypothesis failed.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A rank or orthogonality computation landed too close to its cutoff.
    #[error("conditioning: {0}")]
    Conditioning(String),

    /// An iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (last estimate {last_estimate:.12e})")]
    Iteration {
        iterations: usize,
        last_estimate: f64,
    },

    /// A series that should decay started growing.
    #[error("numerical instability: {0}")]
    Instability(String),

    /// Two bases that should share tag structure do not.
    #[error("structural mismatch: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
