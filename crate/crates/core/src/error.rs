use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },
    #[error("expected {expected} pixels for the given dimensions, got {actual}")]
    PixelCount { expected: usize, actual: usize },
    #[error("training input is empty: at least one swatch image is required")]
    EmptySwatchSet,
    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },
    #[error("cannot summarize an empty list of rates")]
    EmptyRates,
    #[error("invalid tuning parameter {name} = {value}: must be finite and non-negative")]
    InvalidTuning { name: &'static str, value: f64 },
    #[error(
        "model was trained with hue mode `{model}` but `{requested}` was requested; \
         pass an explicit override to mix hue scales"
    )]
    HueModeMismatch {
        model: crate::HueFormulaMode,
        requested: crate::HueFormulaMode,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Failures while building, reading or writing a [`crate::SkinFeature`].
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("cannot access model file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("model file is missing required field `{0}`")]
    MissingField(&'static str),
    #[error("unsupported model format_version {0} (expected 1)")]
    UnsupportedVersion(u64),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}
