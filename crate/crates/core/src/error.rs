use crate::types::Point2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A step produced a non-finite state. `partial` holds every finite
    /// sample computed before the failing step.
    #[error("non-finite state at step {step}")]
    Integration { step: usize, partial: Vec<Vec<f64>> },

    /// A map orbit left the escape radius or overflowed.
    #[error("orbit escaped at iterate {iterate}")]
    Escape { iterate: usize, completed: Vec<Point2> },

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI for its one-line reason.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Integration { .. } => "integration",
            Error::Escape { .. } => "escape",
            Error::SingularParameter(_) => "singular-parameter",
            Error::InsufficientData(_) => "insufficient-data",
            Error::NotInvertible(_) => "not-invertible",
        }
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
