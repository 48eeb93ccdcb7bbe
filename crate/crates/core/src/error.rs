use thiserror::Error;

/// Errors raised while constructing images or combining them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("image dimensions must be positive, got {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("number of gray levels must be in [2, 65536], got {0}")]
    InvalidLevels(u32),
    #[error("expected {expected} pixels, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("pixel {index} has value {value}, outside [0, {max}]")]
    PixelOutOfRange { index: usize, value: u16, max: u32 },
    #[error("image has {image} gray levels but the map has {map}")]
    LevelMismatch { image: u32, map: u32 },
    #[error("images differ in shape: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize, u32),
        right: (usize, usize, u32),
    },
}

/// Errors raised by histogram statistics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HistogramError {
    #[error("histogram has no samples")]
    EmptyHistogram,
    #[error("segment [{lo}, {hi}] carries no mass")]
    ZeroMassSegment { lo: usize, hi: usize },
}
