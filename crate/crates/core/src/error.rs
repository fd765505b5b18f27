use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A quantity fell outside the domain where the formula is defined.
    #[error("domain error in `{param}`: {reason}")]
    Domain { param: &'static str, reason: String },

    /// Constructor-level validation of a value object failed.
    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    #[error(
        "series did not converge within {terms} terms (partial sum {partial:e}, tail bound {tail_bound:e})"
    )]
    Convergence {
        terms: usize,
        partial: f64,
        tail_bound: f64,
    },

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    #[error("frequency {freq_hz:e} Hz outside valid range [{min_hz:e}, {max_hz:e}] Hz for material `{name}`")]
    FrequencyOutOfRange {
        name: String,
        freq_hz: f64,
        min_hz: f64,
        max_hz: f64,
    },

    #[error("material file: {0}")]
    Parse(String),

    #[error("material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    #[error("duplicate material `{0}`")]
    DuplicateMaterial(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }

    pub(crate) fn validation(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            what,
            reason: reason.into(),
        }
    }

    /// `true` for errors caused by the caller's inputs rather than the environment.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
