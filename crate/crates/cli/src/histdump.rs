//! Before/after histograms and the lookup table, as plot-ready CSV.

use histeq::color::luma_plane;
use histeq::{GrayImage, Histogram, MethodSpec, PnmImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistRow {
    pub level: usize,
    pub input_count: u64,
    pub output_count: u64,
    pub lut_value: u16,
}

pub fn histogram_rows(img: &GrayImage, spec: &MethodSpec) -> Vec<HistRow> {
    let out = spec.enhance(img);
    let before = Histogram::from_image(img);
    let after = Histogram::from_image(&out.image);
    (0..before.levels())
        .map(|level| HistRow {
            level,
            input_count: before.counts()[level],
            output_count: after.counts()[level],
            lut_value: out.map.get(level),
        })
        .collect()
}

/// Color images are dumped through their channel-mean plane.
pub fn dump(img: &PnmImage, spec: &MethodSpec) -> String {
    let plane = match img {
        PnmImage::Gray(g) => g.clone(),
        PnmImage::Color(c) => luma_plane(c),
    };
    let mut out = String::from("level,input_count,output_count,lut_value\n");
    for r in histogram_rows(&plane, spec) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.level, r.input_count, r.output_count, r.lut_value
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use histeq::Method;

    #[test]
    fn mass_is_conserved() {
        let img = GrayImage::new(3, 3, 256, vec![0, 5, 5, 9, 100, 100, 101, 200, 255]).unwrap();
        let rows = histogram_rows(&img, &MethodSpec::new(Method::Dsihe));
        assert_eq!(rows.len(), 256);
        assert_eq!(rows.iter().map(|r| r.input_count).sum::<u64>(), 9);
        assert_eq!(rows.iter().map(|r| r.output_count).sum::<u64>(), 9);
    }

    #[test]
    fn fully_split_ramp_is_unchanged() {
        let ramp = GrayImage::new(16, 16, 256, (0..256).collect()).unwrap();
        let spec = MethodSpec::new(Method::Rmshe).with_recursion(8);
        for r in histogram_rows(&ramp, &spec) {
            assert_eq!(r.input_count, r.output_count);
            assert_eq!(r.lut_value as usize, r.level);
        }
    }
}
