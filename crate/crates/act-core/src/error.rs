use thiserror::Error;

/// Errors shared across the transform library.
#[derive(Debug, Error)]
pub enum ActError {
    /// An argument was outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The coefficient sequence has a (near-)zero leading term, so it has no
    /// Dirichlet inverse and the transform cannot be set up.
    #[error("non-invertible coefficient sequence: leading term {leading:e} is below {threshold:e}")]
    NotInvertible { leading: f64, threshold: f64 },

    /// A sequence was shorter than a requested length.
    #[error("length error: need {requested} terms, sequence has {available}")]
    Length { requested: usize, available: usize },

    /// Signals must contain at least one sample.
    #[error("signal must not be empty")]
    EmptySignal,

    /// Signals and spectra must consist of finite values.
    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    /// Two related structures disagree on block length.
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

impl ActError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }

    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Self::SizeMismatch(msg.into())
    }

    pub(crate) fn not_invertible(leading: f64) -> Self {
        Self::NotInvertible {
            leading,
            threshold: crate::numtheory::INVERTIBILITY_THRESHOLD,
        }
    }
}

pub type Result<T> = std::result::Result<T, ActError>;
