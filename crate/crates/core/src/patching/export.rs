//! On-disk patch layout consumed by the trainer:
//!
//! ```text
//! <root>/<image_id>/fg_<n>.png, fg_<n>_mask.png
//! <root>/<image_id>/bg_<n>.png, bg_<n>_mask.png
//! <root>/<image_id>/specs.json
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::{save_gray, save_mask};

use super::{DilationConfig, PatchBatch, PatchSpec, SamplingConfig};

pub const SPECS_FILE: &str = "specs.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchRecord {
    pub image: String,
    pub mask: Option<String>,
    #[serde(flatten)]
    pub spec: PatchSpec,
}

/// Contents of `specs.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchManifest {
    pub image_id: String,
    pub seed: u64,
    pub width: usize,
    pub height: usize,
    pub mean_iqr_height: f64,
    pub n_components: usize,
    pub n_valid: usize,
    pub n_fg: usize,
    pub n_bg: usize,
    pub dilation: DilationConfig,
    pub sampling: SamplingConfig,
    pub patches: Vec<PatchRecord>,
}

/// Everything about one image's sampling run except the pixels.
#[derive(Debug, Clone)]
pub struct ExportContext<'a> {
    pub image_id: &'a str,
    pub dims: (usize, usize),
    pub mean_iqr_height: f64,
    pub n_components: usize,
    pub n_valid: usize,
    pub dilation: &'a DilationConfig,
    pub sampling: &'a SamplingConfig,
}

/// Writes one image's patches and `specs.json`; returns the image directory.
pub fn write_patch_dir(root: &Path, ctx: &ExportContext<'_>, batch: &PatchBatch) -> Result<PathBuf> {
    let dir = root.join(ctx.image_id);
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let mut counters = std::collections::HashMap::new();
    let mut patches = Vec::with_capacity(batch.len());
    for (i, spec) in batch.specs.iter().enumerate() {
        let prefix = spec.region.file_prefix();
        let n = counters.entry(prefix).or_insert(0usize);
        let image = format!("{prefix}_{n}.png");
        save_gray(&batch.images[i], dir.join(&image))?;
        let mask = match &batch.labels {
            Some(labels) => {
                let name = format!("{prefix}_{n}_mask.png");
                save_mask(&labels[i], dir.join(&name))?;
                Some(name)
            }
            None => None,
        };
        *n += 1;
        patches.push(PatchRecord {
            image,
            mask,
            spec: *spec,
        });
    }

    let count = |p: &str| counters.get(p).copied().unwrap_or(0);
    let manifest = PatchManifest {
        image_id: ctx.image_id.to_string(),
        seed: ctx.sampling.rng_seed,
        width: ctx.dims.0,
        height: ctx.dims.1,
        mean_iqr_height: ctx.mean_iqr_height,
        n_components: ctx.n_components,
        n_valid: ctx.n_valid,
        n_fg: count("fg"),
        n_bg: count("bg"),
        dilation: *ctx.dilation,
        sampling: ctx.sampling.clone(),
        patches,
    };
    let path = dir.join(SPECS_FILE);
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::json(&path, e))?;
    fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(dir)
}

pub fn read_patch_manifest(dir: &Path) -> Result<PatchManifest> {
    let path = dir.join(SPECS_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::json(&path, e))
}
