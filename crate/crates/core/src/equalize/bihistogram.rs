//! Single-histogram and bi-histogram methods: HE, BBHE, DSIHE and MMBEBHE.

use super::Enhanced;
use crate::histogram::{
    equal_area_level, mean_level, segment_transform, Histogram, IntensityMap, Segment,
};
use crate::image::GrayImage;

/// Whole-range equalization onto `[0, L-1]`.
pub fn he_map(h: &Histogram) -> (IntensityMap, Vec<Segment>) {
    let segments = vec![h.full_range()];
    (IntensityMap::from_segments(h, &segments), segments)
}

pub fn he(img: &GrayImage) -> Enhanced {
    let (map, segments) = he_map(&Histogram::from_image(img));
    Enhanced::new(img, map, segments)
}

/// Splits into `[0, t]` and `[t + 1, L - 1]` and equalizes each half onto
/// its own range.
pub fn bi_histogram_map(h: &Histogram, threshold: usize) -> (IntensityMap, Vec<Segment>) {
    assert!(
        threshold + 1 < h.levels(),
        "threshold must leave an upper half"
    );
    let segments = vec![
        h.segment(0, threshold),
        h.segment(threshold + 1, h.levels() - 1),
    ];
    (IntensityMap::from_segments(h, &segments), segments)
}

/// Bi-histogram equalization split at the mean level.
pub fn bbhe_map(h: &Histogram) -> (IntensityMap, Vec<Segment>) {
    let split = mean_level(h, &h.full_range()).expect("non-empty histogram");
    bi_histogram_map(h, split)
}

pub fn bbhe(img: &GrayImage) -> Enhanced {
    let (map, segments) = bbhe_map(&Histogram::from_image(img));
    Enhanced::new(img, map, segments)
}

/// Bi-histogram equalization split at the equal-area level.
pub fn dsihe_map(h: &Histogram) -> (IntensityMap, Vec<Segment>) {
    let split = equal_area_level(h, &h.full_range()).expect("non-empty histogram");
    bi_histogram_map(h, split)
}

pub fn dsihe(img: &GrayImage) -> Enhanced {
    let (map, segments) = dsihe_map(&Histogram::from_image(img));
    Enhanced::new(img, map, segments)
}

/// Result of the exhaustive threshold search.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSearch {
    /// Smallest threshold reaching the minimum AMBE.
    pub threshold: usize,
    /// Predicted AMBE for thresholds `0..=L-2`.
    pub curve: Vec<f64>,
}

impl ThresholdSearch {
    pub fn min_ambe(&self) -> f64 {
        self.curve[self.threshold]
    }
}

/// `Σ n_k · map[k]` over a segment equalized onto itself.
fn mapped_level_sum(h: &Histogram, seg: &Segment) -> u128 {
    segment_transform(h, seg, seg.lo, seg.hi)
        .into_iter()
        .zip(&h.counts()[seg.lo..=seg.hi])
        .map(|(v, &n)| u128::from(v) * u128::from(n))
        .sum()
}

/// Predicts the output mean of every bi-histogram split directly from the
/// histogram and returns the split with the smallest brightness error.
pub fn find_min_ambe_threshold(h: &Histogram) -> ThresholdSearch {
    let levels = h.levels();
    let input_sum = h.level_sum() as i128;
    let n = h.total() as f64;
    let mut best: Option<(i128, usize)> = None;
    let mut curve = Vec::with_capacity(levels - 1);
    for t in 0..levels - 1 {
        let output_sum = mapped_level_sum(h, &h.segment(0, t))
            + mapped_level_sum(h, &h.segment(t + 1, levels - 1));
        let err = (output_sum as i128 - input_sum).abs();
        if best.is_none_or(|(e, _)| err < e) {
            best = Some((err, t));
        }
        curve.push(err as f64 / n);
    }
    ThresholdSearch {
        threshold: best.expect("at least two levels").1,
        curve,
    }
}

pub fn mmbebhe_map(h: &Histogram) -> (IntensityMap, Vec<Segment>) {
    bi_histogram_map(h, find_min_ambe_threshold(h).threshold)
}

pub fn mmbebhe(img: &GrayImage) -> Enhanced {
    let (map, segments) = mmbebhe_map(&Histogram::from_image(img));
    Enhanced::new(img, map, segments)
}
