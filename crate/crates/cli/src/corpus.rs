//! Seeded synthetic test images: gradients, bimodal scenes and noisy textures.
//!
//! Content is deliberately low-contrast and off-center in brightness, the
//! regime where plain histogram equalization shifts the mean the most.

use std::path::Path;

use histeq::pnm::{save_pgm, PnmEncoding};
use histeq::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneKind {
    Gradient,
    Bimodal,
    Texture,
}

impl SceneKind {
    const ALL: [SceneKind; 3] = [SceneKind::Gradient, SceneKind::Bimodal, SceneKind::Texture];

    pub fn name(self) -> &'static str {
        match self {
            SceneKind::Gradient => "gradient",
            SceneKind::Bimodal => "bimodal",
            SceneKind::Texture => "texture",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub width: usize,
    pub height: usize,
    pub levels: u32,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 20,
            width: 256,
            height: 256,
            levels: 256,
        }
    }
}

/// Brightness window `[lo, hi]` in unit range, dark or bright at random.
fn window(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let width = rng.random_range(0.25..0.5);
    let lo = if rng.random_bool(0.5) {
        rng.random_range(0.0..0.2)
    } else {
        rng.random_range(0.45..1.0 - width)
    };
    (lo, lo + width)
}

fn quantize(values: &[f64], levels: u32, width: usize, height: usize) -> GrayImage {
    let max = f64::from(levels - 1);
    let pixels = values
        .iter()
        .map(|&v| (v * max).round().clamp(0.0, max) as u16)
        .collect();
    GrayImage::new(width, height, levels, pixels).expect("generated pixels are in range")
}

fn scene(kind: SceneKind, spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> GrayImage {
    let (w, h) = (spec.width, spec.height);
    let (lo, hi) = window(rng);
    let noise = Normal::new(0.0, rng.random_range(0.005..0.03)).unwrap();
    let mut values = vec![0.0; w * h];
    match kind {
        SceneKind::Gradient => {
            let gamma = rng.random_range(0.4..2.5);
            let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (dx, dy) = (angle.cos(), angle.sin());
            let norm = dx.abs() + dy.abs();
            for y in 0..h {
                for x in 0..w {
                    let u = x as f64 / w as f64;
                    let v = y as f64 / h as f64;
                    let t = ((u * dx + v * dy) / norm).rem_euclid(1.0).powf(gamma);
                    values[y * w + x] = lo + (hi - lo) * t + noise.sample(rng);
                }
            }
        }
        SceneKind::Bimodal => {
            let (a, b) = (lo, hi);
            let blobs: Vec<(f64, f64, f64)> = (0..rng.random_range(2..6))
                .map(|_| {
                    (
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.08..0.3),
                    )
                })
                .collect();
            for y in 0..h {
                for x in 0..w {
                    let u = x as f64 / w as f64;
                    let v = y as f64 / h as f64;
                    let inside = blobs
                        .iter()
                        .any(|&(cx, cy, r)| (u - cx).powi(2) + (v - cy).powi(2) < r * r);
                    let base = if inside { b } else { a };
                    values[y * w + x] = base + noise.sample(rng) * 2.0;
                }
            }
        }
        SceneKind::Texture => {
            let waves: Vec<(f64, f64, f64)> = (0..4)
                .map(|_| {
                    (
                        rng.random_range(1.0..12.0),
                        rng.random_range(1.0..12.0),
                        rng.random_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect();
            for y in 0..h {
                for x in 0..w {
                    let u = x as f64 / w as f64;
                    let v = y as f64 / h as f64;
                    let field: f64 = waves
                        .iter()
                        .map(|&(fx, fy, ph)| (std::f64::consts::TAU * (fx * u + fy * v) + ph).sin())
                        .sum::<f64>()
                        / 8.0
                        + 0.5;
                    values[y * w + x] = lo + (hi - lo) * field + noise.sample(rng);
                }
            }
        }
    }
    quantize(&values, spec.levels, w, h)
}

/// Named images; the same spec always yields the same images.
pub fn generate(spec: &CorpusSpec) -> Vec<(String, GrayImage)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|i| {
            let kind = SceneKind::ALL[i % SceneKind::ALL.len()];
            (
                format!("synth_{i:03}_{}", kind.name()),
                scene(kind, spec, &mut rng),
            )
        })
        .collect()
}

/// Writes the corpus as binary PGM files into `dir`.
pub fn write_corpus(dir: &Path, spec: &CorpusSpec) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    generate(spec)
        .into_iter()
        .map(|(name, img)| {
            let file = format!("{name}.pgm");
            let path = dir.join(&file);
            std::fs::write(&path, save_pgm(&img, PnmEncoding::Binary))
                .map_err(|e| CliError::io(&path, e))?;
            Ok(file)
        })
        .collect()
}
