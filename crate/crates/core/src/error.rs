use crate::interval::IntervalError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("resonance: divisor |{k1}·ω + {k2}| is not bounded away from zero")]
    Resonance { k1: i32, k2: i32 },
    #[error("nondegeneracy fails at step {step}: {what} encloses zero")]
    Nondegenerate { step: usize, what: &'static str },
    #[error("Newton iteration for the action shift did not converge: {0}")]
    Newton(String),
    #[error("convergence condition fails: {0}")]
    Convergence(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{path}:{line}: {msg}")]
    Format { path: String, line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
