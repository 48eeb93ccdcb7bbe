//! Recursive separation methods: RMSHE (mean splits) and RSIHE (equal-area splits).

use super::Enhanced;
use crate::histogram::{recursive_segment, Histogram, IntensityMap, Segment, SplitRule};
use crate::image::GrayImage;

fn recursive_map(h: &Histogram, depth: u32, rule: SplitRule) -> (IntensityMap, Vec<Segment>) {
    let segments = recursive_segment(h, depth, rule);
    (IntensityMap::from_segments(h, &segments), segments)
}

pub fn rmshe_map(h: &Histogram, depth: u32) -> (IntensityMap, Vec<Segment>) {
    recursive_map(h, depth, SplitRule::Mean)
}

/// Up to `2^depth` segments split at their means, each equalized onto itself.
pub fn rmshe(img: &GrayImage, depth: u32) -> Enhanced {
    let (map, segments) = rmshe_map(&Histogram::from_image(img), depth);
    Enhanced::new(img, map, segments)
}

pub fn rsihe_map(h: &Histogram, depth: u32) -> (IntensityMap, Vec<Segment>) {
    recursive_map(h, depth, SplitRule::EqualArea)
}

/// Up to `2^depth` segments split at their equal-area levels.
pub fn rsihe(img: &GrayImage, depth: u32) -> Enhanced {
    let (map, segments) = rsihe_map(&Histogram::from_image(img), depth);
    Enhanced::new(img, map, segments)
}
