use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unsupported maxval {0}, expected 255")]
    UnsupportedMaxval(u32),

    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("payload holds {found} bytes, declared dimensions require {expected}")]
    TrailingData { expected: usize, found: usize },

    #[error("empty image")]
    EmptyImage,

    #[error("pixel buffer holds {found} values, dimensions require {expected}")]
    BufferSize { expected: usize, found: usize },

    #[error("bit value {0} is not 0 or 1")]
    InvalidBit(u8),

    #[error("image dimensions {width}x{height} are not multiples of 4")]
    NotBlockAligned { width: usize, height: usize },

    #[error("host must be square, got {width}x{height}")]
    NotSquare { width: usize, height: usize },

    #[error("dimension mismatch: {a_width}x{a_height} vs {b_width}x{b_height}")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },

    #[error("invalid Arnold parameters: {0}")]
    InvalidArnold(String),

    #[error("Arnold period search exceeded {cap} iterations for a={a}, b={b}, N={n}")]
    PeriodCapExceeded { a: u64, b: u64, n: u64, cap: u64 },

    #[error("scrambling count k={k} must be below the period T={period}")]
    KeyOutOfRange { k: u64, period: u64 },

    #[error("invalid logistic parameters: {0}")]
    InvalidLogistic(String),

    #[error("region {0} lies outside the image")]
    RegionOutOfBounds(String),

    #[error("payload out of range: BAN {ban} (max 1023), GAN {gan} (max 63)")]
    PayloadOutOfRange { ban: u16, gan: u8 },

    #[error("empty group")]
    EmptyGroup,
}
