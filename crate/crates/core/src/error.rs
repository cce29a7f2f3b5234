use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A conditional distribution row is not a probability vector.
    #[error("distribution row x={row}: {reason}")]
    Distribution { row: String, reason: String },

    #[error("prior: {0}")]
    Prior(String),

    #[error("invalid rational {input:?}: {reason}")]
    Rational { input: String, reason: String },

    #[error("affine transform requires alpha > 0, got {0}")]
    NonPositiveScale(String),

    #[error("hidden-variable model: {0}")]
    HiddenVariable(String),

    #[error("gauge condition violated: chi1+chi2+chi3 = {sum} is not a multiple of 2*pi")]
    Gauge { sum: f64 },

    #[error("invalid advisor: {0}")]
    Advisor(String),

    #[error("not a rank-1 projector: {0}")]
    NotProjector(String),

    #[error("invalid angle {name} = {value}")]
    Angle { name: String, value: f64 },

    #[error("invalid optimization config: {0}")]
    Config(String),

    /// Game or setting document failed to parse or validate.
    #[error("{field}: {reason}")]
    Format { field: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn format(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
