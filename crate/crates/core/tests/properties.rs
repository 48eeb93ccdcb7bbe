use histeq::equalize::{
    bbhe, dsihe, find_min_ambe_threshold, he, mmbebhe, rmshe, rsihe, rswhe, RswheMode,
};
use histeq::metrics::{ambe, entropy, psnr, ssim_global, SsimConstants};
use histeq::pnm::{load_pnm, save_pgm, save_ppm, PnmEncoding, PnmImage};
use histeq::{ColorImage, GrayImage, Histogram, Method, MethodSpec, Pdf, RswheOptions};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_image() -> impl Strategy<Value = GrayImage> {
    (
        1usize..12,
        1usize..12,
        prop::sample::select(vec![2u32, 4, 8, 16, 256]),
    )
        .prop_flat_map(|(w, h, levels)| {
            prop::collection::vec(0..levels as u16, w * h)
                .prop_map(move |px| GrayImage::new(w, h, levels, px).unwrap())
        })
}

fn all_specs(r: u32) -> Vec<MethodSpec> {
    Method::ALL
        .into_iter()
        .map(|m| MethodSpec::new(m).with_recursion(r))
        .collect()
}

proptest! {
    #[test]
    fn equivalence_chain(img in arb_image()) {
        prop_assert_eq!(rmshe(&img, 0).image, he(&img).image);
        prop_assert_eq!(rsihe(&img, 0).image, he(&img).image);
        prop_assert_eq!(rmshe(&img, 1).image, bbhe(&img).image);
        prop_assert_eq!(rsihe(&img, 1).image, dsihe(&img).image);
    }

    #[test]
    fn outputs_stay_in_their_segment(img in arb_image(), r in 0u32..4) {
        for spec in all_specs(r) {
            let out = spec.enhance(&img);
            for (&x, &y) in img.pixels().iter().zip(out.image.pixels()) {
                let seg = out.segments.iter().find(|s| s.contains(x as usize)).unwrap();
                prop_assert!(seg.contains(y as usize), "{:?}: {} -> {}", spec.method, x, y);
            }
            for seg in &out.segments {
                let lut = &out.map.as_slice()[seg.lo..=seg.hi];
                prop_assert!(lut.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn he_lut_is_globally_monotone(img in arb_image()) {
        let out = he(&img);
        prop_assert!(out.map.as_slice().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(out.map.get(img.levels() as usize - 1) as u32, img.max_level());
    }

    #[test]
    fn mmbebhe_is_optimal(img in arb_image()) {
        let search = find_min_ambe_threshold(&Histogram::from_image(&img));
        let best = ambe(&img, &mmbebhe(&img).image).unwrap();
        prop_assert!((best - search.min_ambe()).abs() < 1e-9);
        prop_assert!(search.curve.iter().all(|&a| best <= a + 1e-9));
        prop_assert!(best <= ambe(&img, &bbhe(&img).image).unwrap() + 1e-9);
    }

    #[test]
    fn rswhe_weights_are_a_pdf(img in arb_image(), r in 0u32..4, median in any::<bool>()) {
        let mode = if median { RswheMode::Median } else { RswheMode::Mean };
        let (_, params) = rswhe(&img, mode, r, &RswheOptions::default());
        prop_assert!((params.weighted.sum() - 1.0).abs() < 1e-9);
        prop_assert!(params.weighted.values().iter().all(|&w| w >= 0.0));
        prop_assert!((params.alphas.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(params.p_min <= params.p_max);
    }

    #[test]
    fn methods_are_deterministic(img in arb_image()) {
        for spec in all_specs(2) {
            prop_assert_eq!(spec.enhance(&img), spec.enhance(&img));
        }
    }

    #[test]
    fn metric_symmetries(a in arb_image(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let px = (0..a.len()).map(|_| rng.random_range(0..a.levels()) as u16).collect();
        let b = GrayImage::new(a.width(), a.height(), a.levels(), px).unwrap();
        let k = SsimConstants::for_levels(a.levels());
        prop_assert_eq!(ambe(&a, &b).unwrap(), ambe(&b, &a).unwrap());
        prop_assert_eq!(ambe(&a, &a).unwrap(), 0.0);
        prop_assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
        let s = ssim_global(&a, &b, &k).unwrap();
        prop_assert!(s.abs() <= 1.0 + 1e-12);
        prop_assert!((ssim_global(&a, &a, &k).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_is_bounded_and_permutation_invariant(counts in prop::collection::vec(0u64..20, 2..64)) {
        prop_assume!(counts.iter().any(|&c| c > 0));
        let levels = counts.len();
        let p = Histogram::from_counts(counts.clone()).pdf().unwrap();
        let e = entropy(&p);
        prop_assert!(e >= 0.0 && e <= (levels as f64).log2() + 1e-12);
        let mut rev = counts;
        rev.reverse();
        let q = Histogram::from_counts(rev).pdf().unwrap();
        prop_assert!((entropy(&q) - e).abs() < 1e-12);
    }

    #[test]
    fn pnm_round_trip(
        w in 1usize..24,
        h in 1usize..24,
        maxval in prop::sample::select(vec![1u32, 3, 255, 256, 1023, 65535]),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = maxval + 1;
        let mut plane = || {
            let px = (0..w * h).map(|_| rng.random_range(0..levels) as u16).collect();
            GrayImage::new(w, h, levels, px).unwrap()
        };
        let gray = plane();
        let color = ColorImage::from_planes(plane(), plane(), plane()).unwrap();
        for enc in [PnmEncoding::Ascii, PnmEncoding::Binary] {
            prop_assert_eq!(load_pnm(&save_pgm(&gray, enc)).unwrap(), PnmImage::Gray(gray.clone()));
            prop_assert_eq!(load_pnm(&save_ppm(&color, enc)).unwrap(), PnmImage::Color(color.clone()));
        }
    }

    #[test]
    fn loader_rejects_any_truncation(w in 1usize..8, h in 1usize..8, cut in 1usize..64) {
        let img = GrayImage::filled(w, h, 256, 7).unwrap();
        let bytes = save_pgm(&img, PnmEncoding::Binary);
        let keep = bytes.len().saturating_sub(cut.min(w * h));
        prop_assert!(load_pnm(&bytes[..keep]).is_err());
    }
}

#[test]
fn entropy_peaks_at_uniform() {
    let uniform = Pdf::from_values(vec![1.0 / 16.0; 16]);
    let mut skew = vec![1.0 / 16.0; 16];
    skew[0] += 0.01;
    skew[1] -= 0.01;
    assert!((entropy(&uniform) - 4.0).abs() < 1e-12);
    assert!(entropy(&Pdf::from_values(skew)) < 4.0);
}

#[test]
fn psnr_falls_as_error_grows() {
    let base = GrayImage::filled(4, 4, 256, 100).unwrap();
    let mut last = f64::INFINITY;
    for d in 1..20u16 {
        let other = GrayImage::filled(4, 4, 256, 100 + d).unwrap();
        let p = psnr(&base, &other).unwrap();
        assert!(p < last);
        last = p;
    }
}

#[test]
fn rmshe_brightness_scales_with_depth_on_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let depths = [0u32, 1, 8];
    let mut totals = [0.0; 3];
    let n = 120;
    for _ in 0..n {
        // Skewed content so the mean shift of plain HE is visible.
        let center: f64 = rng.random_range(20.0..235.0);
        let px = (0..32 * 32)
            .map(|_| {
                let v = center + rng.random_range(-40.0..40.0) * rng.random::<f64>();
                v.clamp(0.0, 255.0) as u16
            })
            .collect();
        let img = GrayImage::new(32, 32, 256, px).unwrap();
        for (t, &r) in totals.iter_mut().zip(&depths) {
            *t += ambe(&img, &rmshe(&img, r).image).unwrap();
        }
    }
    let means = totals.map(|t| t / n as f64);
    assert!(means[0] >= means[1] && means[1] >= means[2], "{means:?}");
}

#[test]
fn identity_cases_are_fixed_points() {
    let ramp = GrayImage::new(16, 16, 256, (0..256).collect()).unwrap();
    let out = rmshe(&ramp, 8);
    assert!(out.map.is_identity());
    assert_eq!(rmshe(&out.image, 8).image, ramp);
    assert_eq!(rsihe(&ramp, 8).image, ramp);

    let top = GrayImage::filled(3, 3, 256, 255).unwrap();
    for spec in all_specs(2) {
        assert_eq!(spec.enhance(&top).image, top, "{:?}", spec.method);
    }
}
