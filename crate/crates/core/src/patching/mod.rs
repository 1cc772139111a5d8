//! Character-context-aware patch sampling.
//!
//! The pipeline for one labelled image is:
//!
//! 1. label the mask's connected components and take the mean height of those
//!    inside the interquartile band ([`height_stats`]);
//! 2. dilate the component bounding boxes twice with kernels proportional to
//!    that height, giving a text-context foreground and its background
//!    complement ([`partition_regions`]);
//! 3. draw anchors uniformly from each region and cut squares whose side is a
//!    random multiple of the character height ([`sample_patches`]).
//!
//! [`plan_patches`] runs steps 1-3 without touching pixels.

mod export;
mod grid;
mod partition;
mod sampling;
mod stats;

use sha2::{Digest, Sha256};

pub use export::{read_patch_manifest, write_patch_dir, ExportContext, PatchManifest, PatchRecord, SPECS_FILE};
pub use grid::{axis_offsets, fixed_grid_patches, tile_rects};
pub use partition::{partition_regions, DilationConfig, RegionPartition};
pub use sampling::{
    extract_batch, patch_counts, sample_patch_specs, sample_patches, PatchBatch, PatchSpec, Region,
    SamplingConfig,
};
pub use stats::{height_stats, percentile, valid_components, HeightStats};

use crate::error::Result;
use crate::imgcore::{connected_components, BinaryMask, Component};

/// Intermediate products of sampling one labelled image.
#[derive(Debug, Clone)]
pub struct PatchPlan {
    pub components: Vec<Component>,
    pub stats: HeightStats,
    pub n_valid: usize,
    pub partition: RegionPartition,
    pub specs: Vec<PatchSpec>,
}

pub fn plan_patches(gt: &BinaryMask, dilation: &DilationConfig, sampling: &SamplingConfig) -> Result<PatchPlan> {
    dilation.validate()?;
    sampling.validate()?;
    let components = connected_components(gt);
    let stats = height_stats(&components)?;
    let n_valid = valid_components(&components, &stats, sampling).len();
    let partition = partition_regions(&components, &stats, dilation, gt.dims())?;
    let specs = sample_patch_specs(&partition, &stats, n_valid, sampling)?;
    Ok(PatchPlan {
        components,
        stats,
        n_valid,
        partition,
        specs,
    })
}

/// Per-image seed derived from a global seed and the image id, stable across platforms.
pub fn derive_seed(global_seed: u64, image_id: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(global_seed.to_le_bytes());
    hasher.update(image_id.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}
