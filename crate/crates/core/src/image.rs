//! Grayscale and RGB raster types with an explicit number of gray levels.

use crate::error::ImageError;

pub const DEFAULT_LEVELS: u32 = 256;
pub const MAX_LEVELS: u32 = 65536;

/// Row-major grid of intensities in `[0, levels - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    levels: u32,
    pixels: Vec<u16>,
}

impl GrayImage {
    pub fn new(
        width: usize,
        height: usize,
        levels: u32,
        pixels: Vec<u16>,
    ) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::InvalidDimensions { width, height });
        }
        if !(2..=MAX_LEVELS).contains(&levels) {
            return Err(ImageError::InvalidLevels(levels));
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(ImageError::LengthMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        let max = levels - 1;
        if let Some((index, &value)) = pixels.iter().enumerate().find(|(_, &v)| u32::from(v) > max)
        {
            return Err(ImageError::PixelOutOfRange { index, value, max });
        }
        Ok(Self {
            width,
            height,
            levels,
            pixels,
        })
    }

    /// Image with every pixel set to `value`.
    pub fn filled(
        width: usize,
        height: usize,
        levels: u32,
        value: u16,
    ) -> Result<Self, ImageError> {
        Self::new(width, height, levels, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// Largest representable intensity, `levels - 1`.
    pub fn max_level(&self) -> u32 {
        self.levels - 1
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u16] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u16> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.pixels[y * self.width + x]
    }

    /// Arithmetic mean intensity.
    pub fn mean(&self) -> f64 {
        let sum: u64 = self.pixels.iter().map(|&v| u64::from(v)).sum();
        sum as f64 / self.pixels.len() as f64
    }

    pub(crate) fn shape(&self) -> (usize, usize, u32) {
        (self.width, self.height, self.levels)
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<(), ImageError> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(ImageError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Builds an image from parts already known to be valid.
    pub(crate) fn from_parts_unchecked(
        width: usize,
        height: usize,
        levels: u32,
        pixels: Vec<u16>,
    ) -> Self {
        debug_assert_eq!(pixels.len(), width * height);
        debug_assert!(pixels.iter().all(|&v| u32::from(v) < levels));
        Self {
            width,
            height,
            levels,
            pixels,
        }
    }
}

/// Three equally sized channel planes sharing one level count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorImage {
    red: GrayImage,
    green: GrayImage,
    blue: GrayImage,
}

impl ColorImage {
    pub fn from_planes(
        red: GrayImage,
        green: GrayImage,
        blue: GrayImage,
    ) -> Result<Self, ImageError> {
        red.same_shape(&green)?;
        red.same_shape(&blue)?;
        Ok(Self { red, green, blue })
    }

    /// Builds an image from interleaved `r, g, b` samples.
    pub fn from_interleaved(
        width: usize,
        height: usize,
        levels: u32,
        samples: &[u16],
    ) -> Result<Self, ImageError> {
        let expected = width * height * 3;
        if samples.len() != expected {
            return Err(ImageError::LengthMismatch {
                expected,
                actual: samples.len(),
            });
        }
        let plane = |c: usize| samples.iter().skip(c).step_by(3).copied().collect();
        Self::from_planes(
            GrayImage::new(width, height, levels, plane(0))?,
            GrayImage::new(width, height, levels, plane(1))?,
            GrayImage::new(width, height, levels, plane(2))?,
        )
    }

    pub fn width(&self) -> usize {
        self.red.width()
    }

    pub fn height(&self) -> usize {
        self.red.height()
    }

    pub fn levels(&self) -> u32 {
        self.red.levels()
    }

    pub fn red(&self) -> &GrayImage {
        &self.red
    }

    pub fn green(&self) -> &GrayImage {
        &self.green
    }

    pub fn blue(&self) -> &GrayImage {
        &self.blue
    }

    pub fn planes(&self) -> [&GrayImage; 3] {
        [&self.red, &self.green, &self.blue]
    }

    pub fn into_planes(self) -> [GrayImage; 3] {
        [self.red, self.green, self.blue]
    }

    pub fn interleaved(&self) -> Vec<u16> {
        let (r, g, b) = (self.red.pixels(), self.green.pixels(), self.blue.pixels());
        let mut out = Vec::with_capacity(r.len() * 3);
        for i in 0..r.len() {
            out.extend_from_slice(&[r[i], g[i], b[i]]);
        }
        out
    }
}
