//! Recursively separated and weighted histogram equalization.
//!
//! Three stages: recursive segmentation (mean or equal-area splits), a
//! power-law reweighting of the pdf inside every segment, and per-segment
//! equalization driven by the reweighted, normalized pdf.
//!
//! For a bin `k` in segment `i` the weight is
//! `p_max · ((p[k] - p_min) / (p_max - p_min))^alpha_i + beta`, where
//! `alpha_i` is the segment's share of the original pixels.

use super::Enhanced;
use crate::histogram::{
    recursive_segment, weighted_segment_transform, Histogram, IntensityMap, Pdf, Segment, SplitRule,
};
use crate::image::GrayImage;

/// Which split rule drives segmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RswheMode {
    /// RSWHE-M.
    Mean,
    /// RSWHE-D, using the equal-area split.
    Median,
}

impl RswheMode {
    pub fn split_rule(self) -> SplitRule {
        match self {
            RswheMode::Mean => SplitRule::Mean,
            RswheMode::Median => SplitRule::EqualArea,
        }
    }
}

/// Which bins define `p_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PminRule {
    /// Minimum over occupied bins; empty bins carry only `beta`.
    #[default]
    Occupied,
    /// Minimum over every bin, usually 0; the formula is applied to all bins.
    AllBins,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RswheOptions {
    /// Replaces the heuristic `beta` when set.
    pub beta: Option<f64>,
    pub pmin: PminRule,
}

/// Where `beta` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaSource {
    Override,
    Heuristic,
    /// The heuristic divides by `X_max - X_min = 0`; `beta` fell back to 0.
    DegenerateRange,
}

/// Intermediate quantities of one RSWHE run.
#[derive(Debug, Clone, PartialEq)]
pub struct RswheParams {
    pub segments: Vec<Segment>,
    pub p_max: f64,
    pub p_min: f64,
    /// Original-pdf mass of each segment.
    pub alphas: Vec<f64>,
    pub beta: f64,
    pub beta_source: BetaSource,
    /// Mean input level `X_M`.
    pub mean_level: f64,
    /// Middle gray `(L - 1) / 2`.
    pub middle_level: f64,
    /// Least and greatest occupied input levels.
    pub min_level: usize,
    pub max_level: usize,
    /// Weighted pdf after normalization to unit sum.
    pub weighted: Pdf,
}

impl RswheParams {
    /// `p_max · |X_M − X_G| / (X_max − X_min)`, or `None` for a single-level image.
    pub fn heuristic_beta(&self) -> Option<f64> {
        let spread = (self.max_level - self.min_level) as f64;
        (spread > 0.0).then(|| self.p_max * (self.mean_level - self.middle_level).abs() / spread)
    }
}

/// `(p_max, p_min)` of the original pdf under the given rule.
pub fn probability_bounds(h: &Histogram, rule: PminRule) -> (f64, f64) {
    let n = h.total() as f64;
    let occupied = || h.counts().iter().filter(|&&c| c > 0).map(|&c| c as f64 / n);
    let p_max = occupied().fold(f64::MIN, f64::max);
    let p_min = match rule {
        PminRule::Occupied => occupied().fold(f64::MAX, f64::min),
        PminRule::AllBins => h
            .counts()
            .iter()
            .map(|&c| c as f64 / n)
            .fold(f64::MAX, f64::min),
    };
    (p_max, p_min)
}

/// Unnormalized power-law weights for every bin, one exponent per segment.
/// A flat occupied histogram (`p_max == p_min`) uses a ratio of 1.
pub fn power_law_weights(
    h: &Histogram,
    segments: &[Segment],
    beta: f64,
    rule: PminRule,
) -> Vec<f64> {
    let n = h.total() as f64;
    let (p_max, p_min) = probability_bounds(h, rule);
    let range = p_max - p_min;
    let mut weights = vec![0.0; h.levels()];
    for seg in segments {
        let bins = weights[seg.lo..=seg.hi]
            .iter_mut()
            .zip(&h.counts()[seg.lo..=seg.hi]);
        for (w, &count) in bins {
            *w = if rule == PminRule::Occupied && count == 0 {
                beta
            } else {
                let ratio = if range > 0.0 {
                    (count as f64 / n - p_min) / range
                } else {
                    1.0
                };
                p_max * ratio.powf(seg.mass) + beta
            };
        }
    }
    weights
}

pub fn rswhe_map(
    h: &Histogram,
    mode: RswheMode,
    depth: u32,
    opts: &RswheOptions,
) -> (IntensityMap, RswheParams) {
    let levels = h.levels();
    let segments = recursive_segment(h, depth, mode.split_rule());
    let (min_level, max_level) = h.occupied_range().expect("non-empty histogram");

    let alphas: Vec<f64> = segments.iter().map(|s| s.mass).collect();
    let (p_max, p_min) = probability_bounds(h, opts.pmin);

    let mean_level = h.level_sum() as f64 / h.total() as f64;
    let middle_level = (levels - 1) as f64 / 2.0;
    let (beta, beta_source) = match opts.beta {
        Some(b) => (b, BetaSource::Override),
        None if max_level == min_level => (0.0, BetaSource::DegenerateRange),
        None => (
            p_max * (mean_level - middle_level).abs() / (max_level - min_level) as f64,
            BetaSource::Heuristic,
        ),
    };

    let mut weights = power_law_weights(h, &segments, beta, opts.pmin);
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let mut map = IntensityMap::identity(levels);
    for seg in &segments {
        map.set_range(
            seg.lo,
            &weighted_segment_transform(&weights, seg, seg.lo, seg.hi),
        );
    }

    let params = RswheParams {
        segments,
        p_max,
        p_min,
        alphas,
        beta,
        beta_source,
        mean_level,
        middle_level,
        min_level,
        max_level,
        weighted: Pdf::from_values(weights),
    };
    (map, params)
}

pub fn rswhe(
    img: &GrayImage,
    mode: RswheMode,
    depth: u32,
    opts: &RswheOptions,
) -> (Enhanced, RswheParams) {
    let (map, params) = rswhe_map(&Histogram::from_image(img), mode, depth, opts);
    (Enhanced::new(img, map, params.segments.clone()), params)
}
