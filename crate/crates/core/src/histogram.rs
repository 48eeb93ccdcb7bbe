//! Histogram statistics, split points and per-segment equalization transforms.
//!
//! Every method in [`crate::equalize`] is a composition of the pieces here:
//! partition the gray range into [`Segment`]s, then equalize each segment
//! onto an output interval using the cumulative distribution of the pixels
//! that fall inside it.
//!
//! Count-based transforms are evaluated in exact integer arithmetic, so
//! split points and rounding never depend on floating point summation order.

use crate::error::{HistogramError, ImageError};
use crate::image::GrayImage;

/// Per-level pixel counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Histogram {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn from_image(img: &GrayImage) -> Self {
        let mut counts = vec![0u64; img.levels() as usize];
        for &v in img.pixels() {
            counts[v as usize] += 1;
        }
        Self {
            total: img.len() as u64,
            counts,
        }
    }

    /// Wraps raw counts. `counts` must have at least two bins.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(counts.len() >= 2, "a histogram needs at least two levels");
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn levels(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Segment covering the whole gray range.
    pub fn full_range(&self) -> Segment {
        self.segment(0, self.levels() - 1)
    }

    /// Segment `[lo, hi]` annotated with its pixel count and mass.
    pub fn segment(&self, lo: usize, hi: usize) -> Segment {
        assert!(
            lo <= hi && hi < self.levels(),
            "invalid segment [{lo}, {hi}]"
        );
        let pixels = self.counts[lo..=hi].iter().sum();
        let mass = if self.total == 0 {
            0.0
        } else {
            pixels as f64 / self.total as f64
        };
        Segment {
            lo,
            hi,
            pixels,
            mass,
        }
    }

    pub fn pdf(&self) -> Result<Pdf, HistogramError> {
        Pdf::from_histogram(self)
    }

    /// Smallest and largest occupied level, if any pixel exists.
    pub fn occupied_range(&self) -> Option<(usize, usize)> {
        let lo = self.counts.iter().position(|&c| c > 0)?;
        let hi = self.counts.iter().rposition(|&c| c > 0)?;
        Some((lo, hi))
    }

    /// Exact `Σ k·n_k` over the whole range.
    pub(crate) fn level_sum(&self) -> u128 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &n)| k as u128 * u128::from(n))
            .sum()
    }
}

/// Normalized histogram, `p[k] = n_k / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pdf(Vec<f64>);

impl Pdf {
    pub fn from_histogram(h: &Histogram) -> Result<Self, HistogramError> {
        if h.total == 0 {
            return Err(HistogramError::EmptyHistogram);
        }
        let n = h.total as f64;
        Ok(Self(h.counts.iter().map(|&c| c as f64 / n).collect()))
    }

    /// Wraps probabilities produced elsewhere (e.g. a reweighted pdf).
    pub fn from_values(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn levels(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Mean level `Σ k·p[k]`.
    pub fn mean(&self) -> f64 {
        self.0.iter().enumerate().map(|(k, &p)| k as f64 * p).sum()
    }

    pub fn cdf(&self) -> Cdf {
        let mut acc = 0.0;
        Cdf(self
            .0
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect())
    }
}

/// Running sum of a [`Pdf`].
#[derive(Debug, Clone, PartialEq)]
pub struct Cdf(Vec<f64>);

impl Cdf {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Inclusive gray-level interval with the original-image pixels it holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
    /// Number of pixels with a level in `[lo, hi]`.
    pub pixels: u64,
    /// Fraction of the image in `[lo, hi]`.
    pub mass: f64,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        self.pixels == 0
    }

    pub fn contains(&self, level: usize) -> bool {
        (self.lo..=self.hi).contains(&level)
    }
}

/// How a segment chooses its split level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitRule {
    /// Split at the (floored) mean level.
    Mean,
    /// Split where the segment cdf is closest to the midpoint of its endpoints.
    EqualArea,
}

impl SplitRule {
    pub fn split_level(self, h: &Histogram, seg: &Segment) -> Result<usize, HistogramError> {
        match self {
            SplitRule::Mean => mean_level(h, seg),
            SplitRule::EqualArea => equal_area_level(h, seg),
        }
    }
}

fn clamp_split(level: usize, seg: &Segment) -> usize {
    if seg.hi > seg.lo {
        level.clamp(seg.lo, seg.hi - 1)
    } else {
        seg.lo
    }
}

fn require_mass(seg: &Segment) -> Result<(), HistogramError> {
    if seg.pixels == 0 {
        Err(HistogramError::ZeroMassSegment {
            lo: seg.lo,
            hi: seg.hi,
        })
    } else {
        Ok(())
    }
}

/// Floor of the mean level inside `seg`, clamped to `[lo, hi - 1]` so both
/// halves of a split are non-empty intervals.
pub fn mean_level(h: &Histogram, seg: &Segment) -> Result<usize, HistogramError> {
    require_mass(seg)?;
    let weighted: u128 = (seg.lo..=seg.hi)
        .map(|k| k as u128 * u128::from(h.counts[k]))
        .sum();
    let mean = (weighted / u128::from(seg.pixels)) as usize;
    Ok(clamp_split(mean, seg))
}

/// Smallest level `k` in `seg` minimizing `|c(k) - (c(lo) + c(hi)) / 2|`,
/// with `c` the cdf of the segment renormalized to unit mass.
pub fn equal_area_level(h: &Histogram, seg: &Segment) -> Result<usize, HistogramError> {
    require_mass(seg)?;
    // Scaled by 2·S: |2·cum(k) - (n_lo + S)|.
    let target = i128::from(h.counts[seg.lo]) + i128::from(seg.pixels);
    let mut cum = 0i128;
    let mut best = (i128::MAX, seg.lo);
    for k in seg.lo..=seg.hi {
        cum += i128::from(h.counts[k]);
        let dist = (2 * cum - target).abs();
        if dist < best.0 {
            best = (dist, k);
        }
    }
    Ok(clamp_split(best.1, seg))
}

/// Splits the full range `depth` times. Segments that are a single level or
/// hold no pixels are carried through unsplit.
pub fn recursive_segment(h: &Histogram, depth: u32, rule: SplitRule) -> Vec<Segment> {
    let mut segments = vec![h.full_range()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(segments.len() * 2);
        let mut changed = false;
        for seg in segments {
            if seg.hi > seg.lo && seg.pixels > 0 {
                let s = rule
                    .split_level(h, &seg)
                    .expect("segment with pixels has a split level");
                next.push(h.segment(seg.lo, s));
                next.push(h.segment(s + 1, seg.hi));
                changed = true;
            } else {
                next.push(seg);
            }
        }
        segments = next;
        if !changed {
            break;
        }
    }
    segments
}

/// Equalizes the pixels of `seg` onto `[out_lo, out_hi]`:
/// `round_half_up(out_lo + (out_hi - out_lo) · c_seg(k))`.
///
/// Returns one output level per input level in `[seg.lo, seg.hi]`. A segment
/// without pixels maps to itself.
pub fn segment_transform(h: &Histogram, seg: &Segment, out_lo: usize, out_hi: usize) -> Vec<u16> {
    assert!(out_lo <= out_hi);
    if seg.pixels == 0 {
        return (seg.lo..=seg.hi).map(|k| k as u16).collect();
    }
    let span = (out_hi - out_lo) as u128;
    let total = u128::from(seg.pixels);
    let mut cum = 0u128;
    (seg.lo..=seg.hi)
        .map(|k| {
            cum += u128::from(h.counts[k]);
            let offset = (2 * span * cum + total) / (2 * total);
            (out_lo + offset as usize).min(out_hi) as u16
        })
        .collect()
}

/// Same transform as [`segment_transform`] driven by real-valued weights
/// (for instance a reweighted pdf). Weights are renormalized over `seg`.
pub fn weighted_segment_transform(
    weights: &[f64],
    seg: &Segment,
    out_lo: usize,
    out_hi: usize,
) -> Vec<u16> {
    assert!(out_lo <= out_hi);
    let part = &weights[seg.lo..=seg.hi];
    let total: f64 = part.iter().sum();
    if total <= 0.0 {
        return (seg.lo..=seg.hi).map(|k| k as u16).collect();
    }
    let span = (out_hi - out_lo) as f64;
    let mut cum = 0.0;
    part.iter()
        .map(|&w| {
            cum += w;
            let v = (out_lo as f64 + span * (cum / total) + 0.5).floor();
            v.clamp(out_lo as f64, out_hi as f64) as u16
        })
        .collect()
}

/// Full lookup table from input level to output level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntensityMap {
    map: Vec<u16>,
}

impl IntensityMap {
    pub fn identity(levels: usize) -> Self {
        Self {
            map: (0..levels).map(|k| k as u16).collect(),
        }
    }

    /// Wraps a table; every entry must be a valid level.
    pub fn from_table(map: Vec<u16>) -> Self {
        let levels = map.len();
        assert!(levels >= 2);
        assert!(map.iter().all(|&v| (v as usize) < levels));
        Self { map }
    }

    /// Equalizes every segment onto its own input range.
    pub fn from_segments(h: &Histogram, segments: &[Segment]) -> Self {
        let mut map = Self::identity(h.levels());
        for seg in segments {
            map.set_range(seg.lo, &segment_transform(h, seg, seg.lo, seg.hi));
        }
        map
    }

    pub(crate) fn set_range(&mut self, lo: usize, values: &[u16]) {
        self.map[lo..lo + values.len()].copy_from_slice(values);
    }

    pub fn levels(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, level: usize) -> u16 {
        self.map[level]
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// Looks every pixel up in the table.
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage, ImageError> {
        if img.levels() as usize != self.map.len() {
            return Err(ImageError::LevelMismatch {
                image: img.levels(),
                map: self.map.len() as u32,
            });
        }
        let pixels = img.pixels().iter().map(|&v| self.map[v as usize]).collect();
        Ok(GrayImage::from_parts_unchecked(
            img.width(),
            img.height(),
            img.levels(),
            pixels,
        ))
    }
}

pub fn apply_map(img: &GrayImage, map: &IntensityMap) -> Result<GrayImage, ImageError> {
    map.apply(img)
}
