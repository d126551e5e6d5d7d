use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("pixel buffer has {actual} values, expected {expected} for {width}x{height}")]
    BufferLength {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("pixel value {value} at index {index} is outside [0, 1]")]
    PixelRange { index: usize, value: f64 },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid structuring element: {0}")]
    StructuringElement(String),

    #[error("structuring element origin cell must be set for this pipeline")]
    OriginNotSet,

    #[error("invalid threshold: {0}")]
    Threshold(String),

    #[error("negative mse {0}")]
    NegativeMse(f64),

    #[error("max intensity must be positive, got {0}")]
    MaxIntensity(f64),

    #[error("defect geometry out of bounds: {0}")]
    DefectBounds(String),

    #[error("invalid tile spec: {0}")]
    TileSpec(String),

    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("{}: malformed header: {reason}", path.display())]
    MalformedHeader { path: PathBuf, reason: String },

    #[error("{}: unsupported bit depth: {detail}", path.display())]
    UnsupportedBitDepth { path: PathBuf, detail: String },

    #[error("{}: truncated pixel data at byte offset {offset}", path.display())]
    Truncated { path: PathBuf, offset: usize },

    #[error("{}: unsupported image format (expected .pgm or .png)", .0.display())]
    UnsupportedFormat(PathBuf),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("png decode: {0}")]
    PngDecode(#[from] png::DecodingError),

    #[error("png encode: {0}")]
    PngEncode(#[from] png::EncodingError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no records to plot")]
    EmptyRecords,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        if source.kind() == std::io::ErrorKind::NotFound {
            return Error::NotFound(path.into());
        }
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
