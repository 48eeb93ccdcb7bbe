//! Applying the gray-level methods to RGB images.

use std::fmt;
use std::str::FromStr;

use crate::equalize::MethodSpec;
use crate::histogram::Histogram;
use crate::image::{ColorImage, GrayImage};
use crate::pnm::PnmImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ColorMode {
    /// Equalize red, green and blue independently.
    #[default]
    PerChannel,
    /// Build the map from the channel mean and apply it to every channel.
    Luma,
}

impl fmt::Display for ColorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorMode::PerChannel => "per-channel",
            ColorMode::Luma => "luma",
        })
    }
}

impl FromStr for ColorMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-channel" => Ok(ColorMode::PerChannel),
            "luma" => Ok(ColorMode::Luma),
            other => Err(format!("unknown color mode `{other}`")),
        }
    }
}

/// Rounded per-pixel mean of the three channels.
pub fn luma_plane(img: &ColorImage) -> GrayImage {
    let [r, g, b] = img.planes();
    let pixels = r
        .pixels()
        .iter()
        .zip(g.pixels())
        .zip(b.pixels())
        .map(|((&r, &g), &b)| ((u32::from(r) + u32::from(g) + u32::from(b) + 1) / 3) as u16)
        .collect();
    GrayImage::from_parts_unchecked(img.width(), img.height(), img.levels(), pixels)
}

pub fn enhance_color(img: &ColorImage, spec: &MethodSpec, mode: ColorMode) -> ColorImage {
    let [r, g, b] = match mode {
        ColorMode::PerChannel => img.planes().map(|p| spec.enhance(p).image),
        ColorMode::Luma => {
            let (map, _) = spec.map(&Histogram::from_image(&luma_plane(img)));
            img.planes()
                .map(|p| map.apply(p).expect("planes share the level count"))
        }
    };
    ColorImage::from_planes(r, g, b).expect("planes keep their shape")
}

impl ColorImage {
    /// The three planes stacked vertically into one gray image, so metrics
    /// can be taken over every sample at once.
    pub fn stacked(&self) -> GrayImage {
        let pixels = self
            .planes()
            .iter()
            .flat_map(|p| p.pixels().iter().copied())
            .collect();
        GrayImage::from_parts_unchecked(self.width(), self.height() * 3, self.levels(), pixels)
    }
}

impl PnmImage {
    pub fn enhance(&self, spec: &MethodSpec, mode: ColorMode) -> PnmImage {
        match self {
            PnmImage::Gray(g) => PnmImage::Gray(spec.enhance(g).image),
            PnmImage::Color(c) => PnmImage::Color(enhance_color(c, spec, mode)),
        }
    }

    /// Gray view used for metrics: the image itself or its stacked planes.
    pub fn metric_plane(&self) -> GrayImage {
        match self {
            PnmImage::Gray(g) => g.clone(),
            PnmImage::Color(c) => c.stacked(),
        }
    }
}
