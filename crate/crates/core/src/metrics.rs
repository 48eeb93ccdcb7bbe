//! Quality measures comparing an enhanced image with its input.

use crate::error::ImageError;
use crate::histogram::{Histogram, Pdf};
use crate::image::GrayImage;

/// Absolute difference of mean brightness, `|mean(x) - mean(y)|`.
pub fn ambe(x: &GrayImage, y: &GrayImage) -> Result<f64, ImageError> {
    x.same_shape(y)?;
    let sum = |img: &GrayImage| img.pixels().iter().map(|&v| i128::from(v)).sum::<i128>();
    Ok((sum(x) - sum(y)).abs() as f64 / x.len() as f64)
}

/// Mean squared pixel difference.
pub fn mse(x: &GrayImage, y: &GrayImage) -> Result<f64, ImageError> {
    x.same_shape(y)?;
    let sq: u128 = x
        .pixels()
        .iter()
        .zip(y.pixels())
        .map(|(&a, &b)| {
            let d = i64::from(a) - i64::from(b);
            (d * d) as u128
        })
        .sum();
    Ok(sq as f64 / x.len() as f64)
}

/// Peak signal-to-noise ratio in dB with peak `L - 1`; infinite for identical images.
pub fn psnr(x: &GrayImage, y: &GrayImage) -> Result<f64, ImageError> {
    let err = mse(x, y)?;
    if err == 0.0 {
        return Ok(f64::INFINITY);
    }
    let peak = f64::from(x.max_level());
    Ok(10.0 * (peak * peak / err).log10())
}

/// Stabilizing constants of the structural similarity index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimConstants {
    pub c1: f64,
    pub c2: f64,
}

impl SsimConstants {
    /// `C1 = (0.01 (L-1))^2`, `C2 = (0.03 (L-1))^2`.
    pub fn for_levels(levels: u32) -> Self {
        let peak = f64::from(levels - 1);
        Self {
            c1: (0.01 * peak).powi(2),
            c2: (0.03 * peak).powi(2),
        }
    }
}

/// Structural similarity over a single window spanning the whole image,
/// using population statistics.
pub fn ssim_global(x: &GrayImage, y: &GrayImage, k: &SsimConstants) -> Result<f64, ImageError> {
    x.same_shape(y)?;
    let n = x.len() as f64;
    let mean = |img: &GrayImage| img.pixels().iter().map(|&v| f64::from(v)).sum::<f64>() / n;
    let (mx, my) = (mean(x), mean(y));
    let (mut vx, mut vy, mut cov) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.pixels().iter().zip(y.pixels()) {
        let (dx, dy) = (f64::from(a) - mx, f64::from(b) - my);
        vx += dx * dx;
        vy += dy * dy;
        cov += dx * dy;
    }
    let (vx, vy, cov) = (vx / n, vy / n, cov / n);
    Ok(((2.0 * mx * my + k.c1) * (2.0 * cov + k.c2))
        / ((mx * mx + my * my + k.c1) * (vx + vy + k.c2)))
}

/// Shannon entropy in bits; empty bins contribute nothing.
pub fn entropy(p: &Pdf) -> f64 {
    -p.values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.log2())
        .sum::<f64>()
}

pub fn image_entropy(img: &GrayImage) -> f64 {
    entropy(
        &Histogram::from_image(img)
            .pdf()
            .expect("images are non-empty"),
    )
}

/// All metrics for one (input, output) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub ambe: f64,
    pub psnr: f64,
    pub ssim: f64,
    pub entropy_in: f64,
    pub entropy_out: f64,
}

impl MetricReport {
    pub fn compute(input: &GrayImage, output: &GrayImage) -> Result<Self, ImageError> {
        Self::compute_with(input, output, &SsimConstants::for_levels(input.levels()))
    }

    pub fn compute_with(
        input: &GrayImage,
        output: &GrayImage,
        k: &SsimConstants,
    ) -> Result<Self, ImageError> {
        Ok(Self {
            ambe: ambe(input, output)?,
            psnr: psnr(input, output)?,
            ssim: ssim_global(input, output, k)?,
            entropy_in: image_entropy(input),
            entropy_out: image_entropy(output),
        })
    }
}
