use crate::error::Result;
use crate::imgcore::{GrayImage, ProbabilityMap};

use super::{Patch, PatchBinarizer, Polarity};

/// 256-bin intensity histogram.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut hist = [0u64; 256];
    for &v in img.data() {
        hist[v as usize] += 1;
    }
    hist
}

/// Between-class variance (times total count squared) for the split `{v <= t} | {v > t}`.
pub fn between_class_variance(hist: &[u64; 256], t: u8) -> f64 {
    let (mut n0, mut s0, mut n1, mut s1) = (0u64, 0u64, 0u64, 0u64);
    for (v, &c) in hist.iter().enumerate() {
        if v <= t as usize {
            n0 += c;
            s0 += c * v as u64;
        } else {
            n1 += c;
            s1 += c * v as u64;
        }
    }
    if n0 == 0 || n1 == 0 {
        return 0.0;
    }
    let diff = s0 as f64 / n0 as f64 - s1 as f64 / n1 as f64;
    n0 as f64 * n1 as f64 * diff * diff
}

/// Global threshold `t` maximising between-class variance; class one is `v <= t`.
///
/// Ties go to the smallest `t`. A constant image returns its own value.
pub fn otsu_threshold(img: &GrayImage) -> u8 {
    let hist = histogram(img);
    let total_n: u64 = hist.iter().sum();
    let total_s: u64 = hist.iter().enumerate().map(|(v, &c)| v as u64 * c).sum();

    let (mut n0, mut s0) = (0u64, 0u64);
    let mut best: Option<(u8, f64)> = None;
    for t in 0..=255u8 {
        n0 += hist[t as usize];
        s0 += hist[t as usize] * t as u64;
        let n1 = total_n - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let diff = s0 as f64 / n0 as f64 - (total_s - s0) as f64 / n1 as f64;
        let var = n0 as f64 * n1 as f64 * diff * diff;
        if best.is_none_or(|(_, b)| var > b) {
            best = Some((t, var));
        }
    }
    match best {
        Some((t, _)) => t,
        // single occupied bin
        None => img.data()[0],
    }
}

/// Text is `v <= t` for dark text and the complement for light text.
pub fn otsu_binarize(img: &GrayImage, polarity: Polarity) -> ProbabilityMap {
    let t = otsu_threshold(img);
    let data = img
        .data()
        .iter()
        .map(|&v| {
            let dark = v <= t;
            let text = match polarity {
                Polarity::DarkText => dark,
                Polarity::LightText => !dark,
            };
            if text {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    ProbabilityMap::from_raw_unchecked(img.width(), img.height(), data)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OtsuBinarizer {
    pub polarity: Polarity,
}

impl PatchBinarizer for OtsuBinarizer {
    fn name(&self) -> &str {
        "otsu"
    }

    fn input_side(&self) -> Option<usize> {
        None
    }

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap> {
        Ok(otsu_binarize(patch.image, self.polarity))
    }
}
