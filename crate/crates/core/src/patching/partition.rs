use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::{dilate, BinaryMask, Component, StructuringElement};

use super::HeightStats;

/// Kernel scales relative to the mean character height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DilationConfig {
    /// First-stage kernel height factor (second-stage width).
    pub s1: f64,
    /// First-stage kernel width factor (second-stage height).
    pub s2: f64,
}

impl Default for DilationConfig {
    fn default() -> Self {
        Self { s1: 0.3, s2: 0.9 }
    }
}

impl DilationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.s1 > 0.0 && self.s2 > 0.0) {
            return Err(Error::InvalidParam(format!(
                "dilation scales must be positive, got s1={} s2={}",
                self.s1, self.s2
            )));
        }
        Ok(())
    }

    /// The two kernels applied in sequence for a given mean character height.
    pub fn kernels(&self, mean_height: f64) -> (StructuringElement, StructuringElement) {
        let first = StructuringElement::from_real(self.s2 * mean_height, self.s1 * mean_height);
        (first, first.transposed())
    }
}

/// Text-context region and its complement.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPartition {
    pub foreground: BinaryMask,
    pub background: BinaryMask,
    pub area_fg: usize,
    pub area_bg: usize,
    pub area_total: usize,
}

impl RegionPartition {
    pub fn from_foreground(foreground: BinaryMask) -> Self {
        let background = foreground.complement();
        let area_fg = foreground.count();
        let area_total = foreground.len();
        Self {
            foreground,
            background,
            area_fg,
            area_bg: area_total - area_fg,
            area_total,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.foreground.dims()
    }
}

/// Rasterizes component bounding boxes and grows them with two transposed rectangular kernels.
pub fn partition_regions(
    components: &[Component],
    stats: &HeightStats,
    cfg: &DilationConfig,
    dims: (usize, usize),
) -> Result<RegionPartition> {
    if components.is_empty() {
        return Err(Error::EmptyMask);
    }
    let (w, h) = dims;
    let mut boxes = BinaryMask::filled(w, h, false)?;
    for c in components {
        boxes.fill_rect(c.bbox(), true);
    }
    let (first, second) = cfg.kernels(stats.mean_iqr_height);
    let grown = dilate(&dilate(&boxes, first), second);
    Ok(RegionPartition::from_foreground(grown))
}
