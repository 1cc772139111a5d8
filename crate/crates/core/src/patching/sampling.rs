use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::{resize_gray, resize_mask, BinaryMask, GrayImage, Rect};

use super::{HeightStats, RegionPartition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    /// Foreground patches per valid component.
    pub r_base: f64,
    pub n_min: usize,
    pub n_max: usize,
    /// Background patch budget for an image with no text context at all.
    pub n_bg_max: usize,
    /// Patch side multiplier range, in units of the mean character height.
    pub k_min: f64,
    pub k_max: f64,
    /// Lower IQR fence factor for valid components.
    pub q1_fence: f64,
    /// Upper IQR fence factor for valid components.
    pub q2_fence: f64,
    /// Side of the resized patches handed to the network.
    pub out_side: usize,
    pub rng_seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            r_base: 0.5,
            n_min: 10,
            n_max: 250,
            n_bg_max: 75,
            k_min: 4.0,
            k_max: 12.0,
            q1_fence: 1.5,
            q2_fence: 1.5,
            out_side: 512,
            rng_seed: 0,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParam(msg));
        if !(self.k_min > 0.0 && self.k_min <= self.k_max) {
            return bad(format!("need 0 < k_min <= k_max, got [{}, {}]", self.k_min, self.k_max));
        }
        if self.n_min > self.n_max {
            return bad(format!("n_min {} exceeds n_max {}", self.n_min, self.n_max));
        }
        if !(self.r_base >= 0.0) || !(self.q1_fence >= 0.0) || !(self.q2_fence >= 0.0) {
            return bad("r_base and fence factors must be non-negative".into());
        }
        if self.out_side == 0 {
            return bad("out_side must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Foreground,
    Background,
    /// Fixed-grid tiling, not drawn from a region.
    Grid,
}

impl Region {
    pub fn file_prefix(&self) -> &'static str {
        match self {
            Region::Foreground => "fg",
            Region::Background => "bg",
            Region::Grid => "grid",
        }
    }
}

/// A square crop of the source image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatchSpec {
    pub x: usize,
    pub y: usize,
    pub side: usize,
    pub region: Region,
    pub anchor_x: usize,
    pub anchor_y: usize,
    /// Drawn side multiplier; 0 for grid patches.
    pub k: f64,
}

impl PatchSpec {
    pub fn rect(&self) -> Rect {
        Rect::square(self.x, self.y, self.side)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatchBatch {
    pub specs: Vec<PatchSpec>,
    pub images: Vec<GrayImage>,
    pub labels: Option<Vec<BinaryMask>>,
}

impl PatchBatch {
    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }
}

/// Foreground and background patch counts for one image.
pub fn patch_counts(n_valid: usize, partition: &RegionPartition, cfg: &SamplingConfig) -> (usize, usize) {
    let preliminary = (n_valid as f64 * cfg.r_base + 0.5).floor() as usize;
    let n_fg = preliminary.clamp(cfg.n_min, cfg.n_max);
    let n_bg = if partition.area_total == 0 {
        0
    } else {
        partition.area_bg * cfg.n_bg_max / partition.area_total
    };
    (n_fg, n_bg)
}

/// Top-left offset of a `side`-wide window centred on `anchor`, shifted to fit `[0, dim)`.
fn centred_offset(anchor: usize, side: usize, dim: usize) -> usize {
    anchor.saturating_sub(side / 2).min(dim - side)
}

/// Draws patch rectangles: anchors uniform over each region, sides `round(k * h)` with `k` uniform.
///
/// An empty region contributes no patches regardless of its count.
pub fn sample_patch_specs(
    partition: &RegionPartition,
    stats: &HeightStats,
    n_valid: usize,
    cfg: &SamplingConfig,
) -> Result<Vec<PatchSpec>> {
    cfg.validate()?;
    let (w, h) = partition.dims();
    let (n_fg, n_bg) = patch_counts(n_valid, partition, cfg);
    let max_side = w.min(h);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut specs = Vec::with_capacity(n_fg + n_bg);

    for (region, mask, count) in [
        (Region::Foreground, &partition.foreground, n_fg),
        (Region::Background, &partition.background, n_bg),
    ] {
        let pixels = mask.true_indices();
        if pixels.is_empty() {
            continue;
        }
        for _ in 0..count {
            let idx = pixels[rng.random_range(0..pixels.len())];
            let k = rng.random_range(cfg.k_min..=cfg.k_max);
            let side = ((k * stats.mean_iqr_height).round() as usize).clamp(1, max_side);
            let (ax, ay) = (idx % w, idx / w);
            specs.push(PatchSpec {
                x: centred_offset(ax, side, w),
                y: centred_offset(ay, side, h),
                side,
                region,
                anchor_x: ax,
                anchor_y: ay,
                k,
            });
        }
    }
    Ok(specs)
}

/// Crops every spec and resizes it to `out_side` (bilinear for pixels, nearest for labels).
pub fn extract_batch(
    img: &GrayImage,
    gt: Option<&BinaryMask>,
    specs: Vec<PatchSpec>,
    out_side: usize,
) -> Result<PatchBatch> {
    if let Some(gt) = gt {
        if gt.dims() != img.dims() {
            return Err(Error::DimMismatch {
                expected: img.dims(),
                actual: gt.dims(),
            });
        }
    }
    let mut images = Vec::with_capacity(specs.len());
    let mut labels = gt.map(|_| Vec::with_capacity(specs.len()));
    for spec in &specs {
        images.push(resize_gray(&img.crop(spec.rect())?, out_side, out_side));
        if let (Some(gt), Some(labels)) = (gt, labels.as_mut()) {
            labels.push(resize_mask(&gt.crop(spec.rect())?, out_side, out_side));
        }
    }
    Ok(PatchBatch {
        specs,
        images,
        labels,
    })
}

pub fn sample_patches(
    img: &GrayImage,
    gt: Option<&BinaryMask>,
    partition: &RegionPartition,
    stats: &HeightStats,
    n_valid: usize,
    cfg: &SamplingConfig,
) -> Result<PatchBatch> {
    if partition.dims() != img.dims() {
        return Err(Error::DimMismatch {
            expected: img.dims(),
            actual: partition.dims(),
        });
    }
    let specs = sample_patch_specs(partition, stats, n_valid, cfg)?;
    extract_batch(img, gt, specs, cfg.out_side)
}
