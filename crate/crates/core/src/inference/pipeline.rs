use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::backends::PatchBinarizer;
use crate::error::{Error, Result};
use crate::imgcore::{connected_components, BinaryMask, GrayImage, ProbabilityMap, Rect};
use crate::patching::{height_stats, partition_regions, tile_rects, DilationConfig, RegionPartition};

use super::accumulate::{Accumulator, DEFAULT_EPSILON};
use super::window::{predict_windows, window_rects};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InferenceConfig {
    /// Stage-1 window sides, ascending.
    pub scales: Vec<usize>,
    /// Stage-1 stride as a fraction of the window side.
    pub stride_fraction: f64,
    /// Strict cut applied to probabilities.
    pub threshold: f64,
    /// Stage-2 window side in units of the mean character height.
    pub refine_k: f64,
    /// Stage-2 window overlap fraction.
    pub refine_overlap: f64,
    pub epsilon: f64,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        Self {
            scales: vec![256, 384, 512, 768],
            stride_fraction: 0.5,
            threshold: 0.5,
            refine_k: 8.0,
            refine_overlap: 0.5,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl InferenceConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParam(m));
        if self.scales.is_empty() || self.scales.contains(&0) || !self.scales.windows(2).all(|w| w[0] < w[1]) {
            return bad(format!("scales must be non-empty, positive and ascending: {:?}", self.scales));
        }
        if !(self.stride_fraction > 0.0 && self.stride_fraction <= 1.0) {
            return bad(format!("stride_fraction must be in (0, 1], got {}", self.stride_fraction));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return bad(format!("threshold must be in (0, 1), got {}", self.threshold));
        }
        if !(self.refine_k > 0.0) {
            return bad(format!("refine_k must be positive, got {}", self.refine_k));
        }
        if !(0.0..1.0).contains(&self.refine_overlap) {
            return bad(format!("refine_overlap must be in [0, 1), got {}", self.refine_overlap));
        }
        if !(self.epsilon >= 0.0) {
            return bad(format!("epsilon must be non-negative, got {}", self.epsilon));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CoarseResult {
    /// Merged map for each configured scale, same order as `InferenceConfig::scales`.
    pub per_scale: Vec<ProbabilityMap>,
    /// Pointwise maximum over `per_scale`.
    pub coarse: ProbabilityMap,
    pub pseudo: BinaryMask,
}

#[derive(Debug, Clone)]
pub struct RefineResult {
    /// `None` when the pseudo mask had no text and the coarse result was kept.
    pub mean_iqr_height: Option<f64>,
    pub partition: Option<RegionPartition>,
    pub tiles: Vec<Rect>,
    pub accumulator: Option<Accumulator>,
    pub probability: ProbabilityMap,
    pub mask: BinaryMask,
}

#[derive(Debug, Clone)]
pub struct InferenceTrace {
    pub coarse: CoarseResult,
    pub refined: RefineResult,
}

impl InferenceTrace {
    pub fn final_mask(&self) -> &BinaryMask {
        &self.refined.mask
    }
}

/// Stage 1: average overlapping windows within each scale, then take the maximum across scales.
pub fn coarse_predict(img: &GrayImage, backend: &dyn PatchBinarizer, cfg: &InferenceConfig) -> Result<CoarseResult> {
    cfg.validate()?;
    let (w, h) = img.dims();
    let mut per_scale = Vec::with_capacity(cfg.scales.len());
    for &scale in &cfg.scales {
        let rects = window_rects(w, h, scale, cfg.stride_fraction)?;
        let preds = predict_windows(img, &rects, backend)?;
        let mut acc = Accumulator::new(w, h);
        for (p, &r) in preds.iter().zip(&rects) {
            acc.add(p, r)?;
        }
        debug!("scale {scale}: {} windows", rects.len());
        per_scale.push(acc.mean());
    }
    let mut coarse = per_scale[0].clone();
    for map in &per_scale[1..] {
        coarse.max_assign(map)?;
    }
    let pseudo = coarse.threshold(cfg.threshold as f32);
    Ok(CoarseResult {
        per_scale,
        coarse,
        pseudo,
    })
}

/// Windows of the refinement grid that touch the text-context region.
pub fn refinement_tiles(foreground: &BinaryMask, side: usize, overlap: f64) -> Result<Vec<Rect>> {
    let (w, h) = foreground.dims();
    // summed-area table of foreground pixels
    let stride = w + 1;
    let mut sat = vec![0u32; stride * (h + 1)];
    for y in 0..h {
        let mut row = 0u32;
        for x in 0..w {
            row += u32::from(foreground.get(x, y));
            sat[(y + 1) * stride + x + 1] = sat[y * stride + x + 1] + row;
        }
    }
    let hits = |r: &Rect| {
        sat[r.bottom() * stride + r.right()] + sat[r.y * stride + r.x]
            - sat[r.y * stride + r.right()]
            - sat[r.bottom() * stride + r.x]
            > 0
    };
    Ok(tile_rects(w, h, side, overlap)?.into_iter().filter(hits).collect())
}

/// Stage 2: re-estimate character height from the pseudo mask, tile its text-context
/// region at `refine_k` times that height, and average the overlapping predictions.
pub fn refine(
    img: &GrayImage,
    pseudo: &BinaryMask,
    backend: &dyn PatchBinarizer,
    cfg: &InferenceConfig,
    dilation: &DilationConfig,
) -> Result<RefineResult> {
    cfg.validate()?;
    dilation.validate()?;
    if pseudo.dims() != img.dims() {
        return Err(Error::DimMismatch {
            expected: img.dims(),
            actual: pseudo.dims(),
        });
    }
    let components = connected_components(pseudo);
    if components.is_empty() {
        info!("no text in pseudo mask, keeping the coarse result");
        return Ok(RefineResult {
            mean_iqr_height: None,
            partition: None,
            tiles: Vec::new(),
            accumulator: None,
            probability: pseudo.to_probability(),
            mask: pseudo.clone(),
        });
    }
    let stats = height_stats(&components)?;
    let partition = partition_regions(&components, &stats, dilation, img.dims())?;
    let (w, h) = img.dims();
    let side = ((cfg.refine_k * stats.mean_iqr_height).round() as usize).clamp(1, w.min(h));
    let tiles = refinement_tiles(&partition.foreground, side, cfg.refine_overlap)?;
    debug!(
        "refinement: mean height {:.2}, side {side}, {} tiles",
        stats.mean_iqr_height,
        tiles.len()
    );

    let preds = predict_windows(img, &tiles, backend)?;
    let mut acc = Accumulator::new(w, h);
    for (p, &r) in preds.iter().zip(&tiles) {
        acc.add(p, r)?;
    }
    let probability = acc.smoothed_mean(cfg.epsilon);
    let mask = probability.threshold(cfg.threshold as f32);
    Ok(RefineResult {
        mean_iqr_height: Some(stats.mean_iqr_height),
        partition: Some(partition),
        tiles,
        accumulator: Some(acc),
        probability,
        mask,
    })
}

pub fn binarize_traced(
    img: &GrayImage,
    backend: &dyn PatchBinarizer,
    cfg: &InferenceConfig,
    dilation: &DilationConfig,
) -> Result<InferenceTrace> {
    let coarse = coarse_predict(img, backend, cfg)?;
    let refined = refine(img, &coarse.pseudo, backend, cfg, dilation)?;
    Ok(InferenceTrace { coarse, refined })
}

/// Full two-stage binarization.
pub fn binarize(
    img: &GrayImage,
    backend: &dyn PatchBinarizer,
    cfg: &InferenceConfig,
    dilation: &DilationConfig,
) -> Result<BinaryMask> {
    Ok(binarize_traced(img, backend, cfg, dilation)?.refined.mask)
}
