use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::Component;

use super::SamplingConfig;

/// Robust character-height statistics over a component set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightStats {
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
    /// Mean of the heights inside `[q1, q3]`.
    pub mean_iqr_height: f64,
    pub n_components: usize,
}

/// Percentile by linear interpolation between closest ranks; `sorted` must be ascending.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn height_stats(components: &[Component]) -> Result<HeightStats> {
    if components.is_empty() {
        return Err(Error::EmptyMask);
    }
    let mut heights: Vec<f64> = components.iter().map(|c| c.height() as f64).collect();
    heights.sort_by(f64::total_cmp);
    let q1 = percentile(&heights, 0.25);
    let q3 = percentile(&heights, 0.75);

    let (sum, n) = heights
        .iter()
        .filter(|&&h| q1 <= h && h <= q3)
        .fold((0.0, 0usize), |(s, n), &h| (s + h, n + 1));
    // Only two distinct heights can leave the interquartile band empty; fall back to the median.
    let mean_iqr_height = if n == 0 { percentile(&heights, 0.5) } else { sum / n as f64 };

    Ok(HeightStats {
        q1,
        q3,
        iqr: q3 - q1,
        mean_iqr_height,
        n_components: components.len(),
    })
}

/// Components whose height lies inside the IQR fences.
pub fn valid_components(components: &[Component], stats: &HeightStats, cfg: &SamplingConfig) -> Vec<Component> {
    let lower = stats.q1 - cfg.q1_fence * stats.iqr;
    let upper = stats.q3 + cfg.q2_fence * stats.iqr;
    components
        .iter()
        .filter(|c| {
            let h = c.height() as f64;
            lower <= h && h <= upper
        })
        .copied()
        .collect()
}
