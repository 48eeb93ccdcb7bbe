//! Brute-force reference implementations working directly on pixel lists.
//!
//! Nothing here calls into `histeq`: counts come from scanning the pixels,
//! recursion is depth-first, and the threshold search re-equalizes the whole
//! image for every candidate threshold.

#![allow(dead_code, clippy::needless_range_loop)]

pub struct Img {
    pub levels: usize,
    pub px: Vec<usize>,
}

fn count_in(img: &Img, lo: usize, hi: usize) -> u64 {
    img.px.iter().filter(|&&v| v >= lo && v <= hi).count() as u64
}

fn sum_in(img: &Img, lo: usize, hi: usize) -> u64 {
    img.px
        .iter()
        .filter(|&&v| v >= lo && v <= hi)
        .map(|&v| v as u64)
        .sum()
}

fn clamp_split(s: usize, lo: usize, hi: usize) -> usize {
    if s < lo {
        lo
    } else if s > hi - 1 {
        hi - 1
    } else {
        s
    }
}

/// floor(mean) of the pixels in [lo, hi].
pub fn mean_split(img: &Img, lo: usize, hi: usize) -> usize {
    clamp_split(
        (sum_in(img, lo, hi) / count_in(img, lo, hi)) as usize,
        lo,
        hi,
    )
}

/// First k with minimal |cdf(k) - (cdf(lo) + cdf(hi)) / 2| inside [lo, hi].
pub fn equal_area_split(img: &Img, lo: usize, hi: usize) -> usize {
    let total = count_in(img, lo, hi) as i64;
    let first = count_in(img, lo, lo) as i64;
    // Compare 2·S·|cdf(k) - target| = |2·cum(k) - first - S|.
    let mut best_k = lo;
    let mut best = i64::MAX;
    for k in lo..=hi {
        let d = (2 * count_in(img, lo, k) as i64 - first - total).abs();
        if d < best {
            best = d;
            best_k = k;
        }
    }
    clamp_split(best_k, lo, hi)
}

#[derive(Clone, Copy)]
pub enum Split {
    Mean,
    EqualArea,
}

pub fn segments(img: &Img, lo: usize, hi: usize, depth: u32, split: Split) -> Vec<(usize, usize)> {
    if depth == 0 || lo == hi || count_in(img, lo, hi) == 0 {
        return vec![(lo, hi)];
    }
    let s = match split {
        Split::Mean => mean_split(img, lo, hi),
        Split::EqualArea => equal_area_split(img, lo, hi),
    };
    let mut out = segments(img, lo, s, depth - 1, split);
    out.extend(segments(img, s + 1, hi, depth - 1, split));
    out
}

/// Output level of `x` when [lo, hi] is equalized onto itself.
fn equalize_level(img: &Img, lo: usize, hi: usize, x: usize) -> usize {
    let total = count_in(img, lo, hi);
    if total == 0 {
        return x;
    }
    let cum = count_in(img, lo, x);
    // round_half_up((hi - lo) * cum / total)
    let num = 2 * (hi - lo) as u64 * cum + total;
    lo + (num / (2 * total)) as usize
}

pub fn equalize_segments(img: &Img, segs: &[(usize, usize)]) -> Vec<usize> {
    img.px
        .iter()
        .map(|&x| {
            let &(lo, hi) = segs.iter().find(|&&(lo, hi)| x >= lo && x <= hi).unwrap();
            equalize_level(img, lo, hi, x)
        })
        .collect()
}

pub fn he(img: &Img) -> Vec<usize> {
    equalize_segments(img, &[(0, img.levels - 1)])
}

pub fn split_at(img: &Img, t: usize) -> Vec<usize> {
    equalize_segments(img, &[(0, t), (t + 1, img.levels - 1)])
}

pub fn bbhe(img: &Img) -> Vec<usize> {
    split_at(img, mean_split(img, 0, img.levels - 1))
}

pub fn dsihe(img: &Img) -> Vec<usize> {
    split_at(img, equal_area_split(img, 0, img.levels - 1))
}

pub fn rmshe(img: &Img, r: u32) -> Vec<usize> {
    equalize_segments(img, &segments(img, 0, img.levels - 1, r, Split::Mean))
}

pub fn rsihe(img: &Img, r: u32) -> Vec<usize> {
    equalize_segments(img, &segments(img, 0, img.levels - 1, r, Split::EqualArea))
}

/// Exhaustive threshold search by re-equalizing the image for every t.
pub fn mmbebhe(img: &Img) -> (usize, Vec<usize>) {
    let input: i64 = img.px.iter().map(|&v| v as i64).sum();
    let mut best = (i64::MAX, 0);
    for t in 0..img.levels - 1 {
        let out: i64 = split_at(img, t).iter().map(|&v| v as i64).sum();
        let err = (out - input).abs();
        if err < best.0 {
            best = (err, t);
        }
    }
    (best.1, split_at(img, best.1))
}

pub struct RswheOut {
    pub px: Vec<usize>,
    pub weighted: Vec<f64>,
    pub beta: f64,
}

/// Occupied-bin p_min, heuristic beta unless `beta` is given.
pub fn rswhe(img: &Img, r: u32, split: Split, beta: Option<f64>) -> RswheOut {
    let n = img.px.len() as f64;
    let l = img.levels;
    let p: Vec<f64> = (0..l).map(|k| count_in(img, k, k) as f64 / n).collect();
    let occupied: Vec<usize> = (0..l).filter(|&k| count_in(img, k, k) > 0).collect();
    let mut p_max = f64::MIN;
    let mut p_min = f64::MAX;
    for &k in &occupied {
        if p[k] > p_max {
            p_max = p[k];
        }
        if p[k] < p_min {
            p_min = p[k];
        }
    }
    let x_min = occupied[0];
    let x_max = occupied[occupied.len() - 1];
    let mean = img.px.iter().map(|&v| v as u64).sum::<u64>() as f64 / n;
    let middle = (l - 1) as f64 / 2.0;
    let beta = match beta {
        Some(b) => b,
        None if x_max == x_min => 0.0,
        None => p_max * (mean - middle).abs() / (x_max - x_min) as f64,
    };

    let segs = segments(img, 0, l - 1, r, split);
    let mut w = vec![0.0; l];
    for &(lo, hi) in &segs {
        let alpha = count_in(img, lo, hi) as f64 / n;
        for k in lo..=hi {
            if count_in(img, k, k) == 0 {
                w[k] = beta;
            } else {
                let ratio = if p_max > p_min {
                    (p[k] - p_min) / (p_max - p_min)
                } else {
                    1.0
                };
                w[k] = p_max * ratio.powf(alpha) + beta;
            }
        }
    }
    let mut total = 0.0;
    for k in 0..l {
        total += w[k];
    }
    for k in 0..l {
        w[k] /= total;
    }

    let mut lut = vec![0usize; l];
    for &(lo, hi) in &segs {
        let mut seg_total = 0.0;
        for k in lo..=hi {
            seg_total += w[k];
        }
        let mut cum = 0.0;
        for k in lo..=hi {
            cum += w[k];
            lut[k] = if seg_total > 0.0 {
                let v = (lo as f64 + (hi - lo) as f64 * (cum / seg_total) + 0.5).floor();
                v.max(lo as f64).min(hi as f64) as usize
            } else {
                k
            };
        }
    }
    RswheOut {
        px: img.px.iter().map(|&x| lut[x]).collect(),
        weighted: w,
        beta,
    }
}

pub fn mean(px: &[usize]) -> f64 {
    px.iter().map(|&v| v as f64).sum::<f64>() / px.len() as f64
}

pub fn ambe(x: &[usize], y: &[usize]) -> f64 {
    (mean(x) - mean(y)).abs()
}

/// Images as (rows, cols) grids, summed with nested loops.
pub fn mse(x: &[usize], y: &[usize], w: usize, h: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..h {
        for j in 0..w {
            let d = x[i * w + j] as f64 - y[i * w + j] as f64;
            s += d * d;
        }
    }
    s / (w * h) as f64
}

pub fn psnr(x: &[usize], y: &[usize], w: usize, h: usize, levels: usize) -> f64 {
    let m = mse(x, y, w, h);
    if m == 0.0 {
        f64::INFINITY
    } else {
        10.0 * ((levels - 1) as f64 * (levels - 1) as f64 / m).log10()
    }
}

pub fn ssim(x: &[usize], y: &[usize], w: usize, h: usize, levels: usize) -> f64 {
    let c1 = (0.01 * (levels - 1) as f64).powi(2);
    let c2 = (0.03 * (levels - 1) as f64).powi(2);
    let n = (w * h) as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..h {
        for j in 0..w {
            sx += x[i * w + j] as f64;
            sy += y[i * w + j] as f64;
        }
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
    for i in 0..h {
        for j in 0..w {
            let a = x[i * w + j] as f64 - mx;
            let b = y[i * w + j] as f64 - my;
            vx += a * a;
            vy += b * b;
            cxy += a * b;
        }
    }
    vx /= n;
    vy /= n;
    cxy /= n;
    ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2))
}

pub fn entropy(px: &[usize], levels: usize) -> f64 {
    let n = px.len() as f64;
    let mut e = 0.0;
    for k in 0..levels {
        let c = px.iter().filter(|&&v| v == k).count();
        if c > 0 {
            let p = c as f64 / n;
            e -= p * p.log2();
        }
    }
    e
}
