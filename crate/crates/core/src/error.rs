use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input too short: {0}")]
    InputTooShort(String),

    #[error("degenerate normalization: input has zero variance")]
    DegenerateNormalization,

    #[error("over-resolved filterbank: {n_mels} mel bands exceed {freq_bins} frequency bins")]
    OverResolvedFilterbank { n_mels: usize, freq_bins: usize },

    #[error("unbounded resonance: undamped surface driven at its natural frequency ({w_n} rad/s)")]
    UnboundedResonance { w_n: f64 },

    #[error("range aliasing: {range_m} m is outside the unambiguous range (0, {max_range_m}) m")]
    RangeAliasing { range_m: f64, max_range_m: f64 },

    #[error("no target: range profile carries no energy outside the DC bin")]
    NoTarget,

    #[error("empty reference transcript")]
    EmptyReference,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("sample rate mismatch: {0} Hz vs {1} Hz")]
    SampleRateMismatch(f64, f64),

    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("malformed capture: {0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Wav {
        path: PathBuf,
        #[source]
        source: hound::Error,
    },

    #[error("all {count} items failed; first error: {first}")]
    AllItemsFailed { count: usize, first: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
