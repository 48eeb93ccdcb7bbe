//! The histogram-equalization family.
//!
//! Each method reduces to an [`IntensityMap`] computed from the input
//! histogram; applying it is one table lookup per pixel.

mod bihistogram;
mod recursive;
mod rswhe;

use std::fmt;
use std::str::FromStr;

pub use bihistogram::{
    bbhe, bbhe_map, bi_histogram_map, dsihe, dsihe_map, find_min_ambe_threshold, he, he_map,
    mmbebhe, mmbebhe_map, ThresholdSearch,
};
pub use recursive::{rmshe, rmshe_map, rsihe, rsihe_map};
pub use rswhe::{rswhe, rswhe_map, BetaSource, PminRule, RswheMode, RswheOptions, RswheParams};

use crate::histogram::{Histogram, IntensityMap, Segment};
use crate::image::GrayImage;

/// Recursion depth used when none is given.
pub const DEFAULT_RECURSION: u32 = 2;

/// Output of an equalizer: the enhanced image, its lookup table and the
/// segments that table was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Enhanced {
    pub image: GrayImage,
    pub map: IntensityMap,
    pub segments: Vec<Segment>,
}

impl Enhanced {
    pub(crate) fn new(img: &GrayImage, map: IntensityMap, segments: Vec<Segment>) -> Self {
        let image = map
            .apply(img)
            .expect("map built from this image's histogram");
        Self {
            image,
            map,
            segments,
        }
    }
}

/// The eight method variants, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    He,
    Bbhe,
    Dsihe,
    Rmshe,
    Rsihe,
    Mmbebhe,
    RswheMean,
    RswheMedian,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::He,
        Method::Bbhe,
        Method::Dsihe,
        Method::Rmshe,
        Method::Rsihe,
        Method::Mmbebhe,
        Method::RswheMean,
        Method::RswheMedian,
    ];

    /// Command-line name, also used as a directory name.
    pub fn slug(self) -> &'static str {
        match self {
            Method::He => "he",
            Method::Bbhe => "bbhe",
            Method::Dsihe => "dsihe",
            Method::Rmshe => "rmshe",
            Method::Rsihe => "rsihe",
            Method::Mmbebhe => "mmbebhe",
            Method::RswheMean => "rswhe-m",
            Method::RswheMedian => "rswhe-d",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Method::He => "HE",
            Method::Bbhe => "BBHE",
            Method::Dsihe => "DSIHE",
            Method::Rmshe => "RMSHE",
            Method::Rsihe => "RSIHE",
            Method::Mmbebhe => "MMBEBHE",
            Method::RswheMean => "RSWHE-M",
            Method::RswheMedian => "RSWHE-D",
        }
    }

    pub fn is_recursive(self) -> bool {
        matches!(
            self,
            Method::Rmshe | Method::Rsihe | Method::RswheMean | Method::RswheMedian
        )
    }

    pub fn is_rswhe(self) -> bool {
        matches!(self, Method::RswheMean | Method::RswheMedian)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}`")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.slug().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

/// A method together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSpec {
    pub method: Method,
    /// Recursion depth; only read by recursive methods.
    pub recursion: u32,
    /// Only read by the RSWHE variants.
    pub rswhe: RswheOptions,
}

impl MethodSpec {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            recursion: DEFAULT_RECURSION,
            rswhe: RswheOptions::default(),
        }
    }

    pub fn with_recursion(mut self, r: u32) -> Self {
        self.recursion = r;
        self
    }

    pub fn with_rswhe(mut self, opts: RswheOptions) -> Self {
        self.rswhe = opts;
        self
    }

    /// Recursion depth if the method uses one.
    pub fn effective_recursion(&self) -> Option<u32> {
        self.method.is_recursive().then_some(self.recursion)
    }

    /// Column label such as `RMSHE (r=2)`.
    pub fn label(&self) -> String {
        match self.effective_recursion() {
            Some(r) => format!("{} (r={r})", self.method.display_name()),
            None => self.method.display_name().to_string(),
        }
    }

    /// Lookup table and segments for a histogram.
    pub fn map(&self, h: &Histogram) -> (IntensityMap, Vec<Segment>) {
        let r = self.recursion;
        match self.method {
            Method::He => he_map(h),
            Method::Bbhe => bbhe_map(h),
            Method::Dsihe => dsihe_map(h),
            Method::Rmshe => rmshe_map(h, r),
            Method::Rsihe => rsihe_map(h, r),
            Method::Mmbebhe => mmbebhe_map(h),
            Method::RswheMean => {
                let (map, params) = rswhe_map(h, RswheMode::Mean, r, &self.rswhe);
                (map, params.segments)
            }
            Method::RswheMedian => {
                let (map, params) = rswhe_map(h, RswheMode::Median, r, &self.rswhe);
                (map, params.segments)
            }
        }
    }

    pub fn enhance(&self, img: &GrayImage) -> Enhanced {
        let (map, segments) = self.map(&Histogram::from_image(img));
        Enhanced::new(img, map, segments)
    }
}

impl From<Method> for MethodSpec {
    fn from(method: Method) -> Self {
        Self::new(method)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_method_names() {
        for m in Method::ALL {
            assert_eq!(m.slug().parse::<Method>().unwrap(), m);
        }
        assert_eq!("RSWHE-M".parse::<Method>().unwrap(), Method::RswheMean);
        assert!("clahe".parse::<Method>().is_err());
    }

    #[test]
    fn labels_follow_table_headers() {
        assert_eq!(MethodSpec::new(Method::He).label(), "HE");
        assert_eq!(MethodSpec::new(Method::Rmshe).label(), "RMSHE (r=2)");
        assert_eq!(
            MethodSpec::new(Method::RswheMedian)
                .with_recursion(3)
                .label(),
            "RSWHE-D (r=3)"
        );
        assert_eq!(MethodSpec::new(Method::Mmbebhe).effective_recursion(), None);
    }
}
