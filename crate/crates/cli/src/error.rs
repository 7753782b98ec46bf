use std::path::PathBuf;

use skinseg::ModelError;

/// Exit status for malformed invocations and configuration conflicts.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for unreadable, unwritable or undecodable files.
pub const EXIT_IO: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("{path}: {source}")]
    Model {
        path: PathBuf,
        #[source]
        source: ModelError,
    },
    #[error("{path}:{line}: {message}")]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("pair {image} / {mask}: {source}")]
    Pair {
        image: PathBuf,
        mask: PathBuf,
        #[source]
        source: Box<CliError>,
    },
    #[error("{}", .0.join("\n"))]
    Inputs(Vec<String>),
    #[error(transparent)]
    Core(#[from] skinseg::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Core(
                skinseg::Error::HueModeMismatch { .. }
                | skinseg::Error::InvalidTuning { .. }
                | skinseg::Error::EmptySwatchSet,
            ) => EXIT_USAGE,
            Self::Pair { source, .. } => source.exit_code(),
            _ => EXIT_IO,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
