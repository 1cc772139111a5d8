//! Corpus manifests, train/test splits, corpus statistics and batch patch export.
//!
//! A manifest is a JSON file listing images, optional masks and free-form tags,
//! with paths relative to the manifest itself:
//!
//! ```json
//! {
//!   "entries": [
//!     { "image_id": "stele_01", "image": "images/stele_01.png",
//!       "mask": "masks/stele_01.png", "tags": ["worn"] }
//!   ],
//!   "split": { "stele_01": "train" }
//! }
//! ```

mod manifest;
mod split;

use std::path::Path;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use manifest::{Manifest, ManifestEntry, SplitRole};
pub use split::split;

use crate::error::{Error, Result};
use crate::imgcore::{connected_components, load_gray, load_mask};
use crate::patching::{derive_seed, extract_batch, plan_patches, write_patch_dir, DilationConfig, ExportContext, SamplingConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageStats {
    pub image_id: String,
    pub components: usize,
    pub width: usize,
    pub height: usize,
    pub aspect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range<T> {
    pub min: T,
    pub max: T,
}

impl<T: PartialOrd + Copy> Range<T> {
    fn over(mut values: impl Iterator<Item = T>) -> Option<Self> {
        let first = values.next()?;
        Some(values.fold(Range { min: first, max: first }, |r, v| Range {
            min: if v < r.min { v } else { r.min },
            max: if v > r.max { v } else { r.max },
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub images: Vec<ImageStats>,
    pub components: Range<usize>,
    pub width: Range<usize>,
    pub height: Range<usize>,
    pub aspect: Range<f64>,
}

impl CorpusStats {
    pub fn from_images(images: Vec<ImageStats>) -> Result<Self> {
        let empty = || Error::EmptySet;
        Ok(Self {
            components: Range::over(images.iter().map(|s| s.components)).ok_or_else(empty)?,
            width: Range::over(images.iter().map(|s| s.width)).ok_or_else(empty)?,
            height: Range::over(images.iter().map(|s| s.height)).ok_or_else(empty)?,
            aspect: Range::over(images.iter().map(|s| s.aspect)).ok_or_else(empty)?,
            images,
        })
    }
}

/// Per-image connected-component counts and dimensions, plus corpus ranges.
pub fn compute_stats(manifest: &Manifest) -> Result<CorpusStats> {
    let images = manifest
        .entries
        .par_iter()
        .map(|e| {
            let path = manifest.mask_path(e).ok_or(Error::MissingGroundTruth)?;
            let mask = load_mask(&path)?;
            let (width, height) = mask.dims();
            Ok(ImageStats {
                image_id: e.image_id.clone(),
                components: connected_components(&mask).len(),
                width,
                height,
                aspect: width as f64 / height as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CorpusStats::from_images(images)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportedImage {
    pub image_id: String,
    pub seed: u64,
    pub n_fg: usize,
    pub n_bg: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExportSummary {
    pub images: Vec<ExportedImage>,
}

impl ExportSummary {
    pub fn total_patches(&self) -> usize {
        self.images.iter().map(|i| i.n_fg + i.n_bg).sum()
    }

    pub fn skipped(&self) -> impl Iterator<Item = &ExportedImage> {
        self.images.iter().filter(|i| i.skipped.is_some())
    }
}

/// Samples and writes patches for every training entry (all entries when no split exists).
///
/// `sampling.rng_seed` is the global seed; each image draws from
/// `derive_seed(global, image_id)`, so output does not depend on scheduling.
/// Images whose mask has no foreground are skipped with a warning.
pub fn export_patches(
    manifest: &Manifest,
    sampling: &SamplingConfig,
    dilation: &DilationConfig,
    out_dir: &Path,
) -> Result<ExportSummary> {
    sampling.validate()?;
    dilation.validate()?;
    let entries = manifest.entries_for(SplitRole::Train);
    if let Some(e) = entries.iter().find(|e| e.mask.is_none()) {
        return Err(Error::Manifest(format!("training entry {} has no mask", e.image_id)));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let images = entries
        .par_iter()
        .map(|e| {
            let seed = derive_seed(sampling.rng_seed, &e.image_id);
            let cfg = SamplingConfig {
                rng_seed: seed,
                ..sampling.clone()
            };
            let img = load_gray(manifest.image_path(e))?;
            let gt = load_mask(manifest.mask_path(e).expect("checked above"))?;
            let plan = match plan_patches(&gt, dilation, &cfg) {
                Err(Error::EmptyMask) => {
                    warn!("{}: mask has no foreground, skipping", e.image_id);
                    return Ok(ExportedImage {
                        image_id: e.image_id.clone(),
                        seed,
                        n_fg: 0,
                        n_bg: 0,
                        skipped: Some(Error::EmptyMask.to_string()),
                    });
                }
                other => other?,
            };
            if img.dims() != gt.dims() {
                return Err(Error::DimMismatch {
                    expected: img.dims(),
                    actual: gt.dims(),
                });
            }
            let batch = extract_batch(&img, Some(&gt), plan.specs, cfg.out_side)?;
            let ctx = ExportContext {
                image_id: &e.image_id,
                dims: img.dims(),
                mean_iqr_height: plan.stats.mean_iqr_height,
                n_components: plan.components.len(),
                n_valid: plan.n_valid,
                dilation,
                sampling: &cfg,
            };
            write_patch_dir(out_dir, &ctx, &batch)?;
            let n_fg = batch.specs.iter().filter(|s| s.region == crate::patching::Region::Foreground).count();
            Ok(ExportedImage {
                image_id: e.image_id.clone(),
                seed,
                n_fg,
                n_bg: batch.len() - n_fg,
                skipped: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExportSummary { images })
}
