use crate::error::{Error, Result};
use crate::imgcore::{ProbabilityMap, Rect};

pub const DEFAULT_EPSILON: f64 = 1e-8;

/// Running sum and count of patch predictions placed on a full-size canvas.
#[derive(Debug, Clone, PartialEq)]
pub struct Accumulator {
    width: usize,
    height: usize,
    sum: Vec<f64>,
    count: Vec<u32>,
}

impl Accumulator {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            sum: vec![0.0; width * height],
            count: vec![0; width * height],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn sum(&self) -> &[f64] {
        &self.sum
    }

    pub fn count(&self) -> &[u32] {
        &self.count
    }

    /// Adds `pred` at `rect`; the prediction must already be at the rectangle's size.
    pub fn add(&mut self, pred: &ProbabilityMap, rect: Rect) -> Result<()> {
        if pred.dims() != (rect.width, rect.height) {
            return Err(Error::DimMismatch {
                expected: (rect.width, rect.height),
                actual: pred.dims(),
            });
        }
        if !rect.fits_in(self.width, self.height) {
            return Err(Error::DimMismatch {
                expected: (self.width, self.height),
                actual: (rect.right(), rect.bottom()),
            });
        }
        for dy in 0..rect.height {
            let row = (rect.y + dy) * self.width + rect.x;
            let src = pred.row(dy);
            for (dx, &p) in src.iter().enumerate() {
                self.sum[row + dx] += f64::from(p);
                self.count[row + dx] += 1;
            }
        }
        Ok(())
    }

    pub fn covered(&self, x: usize, y: usize) -> bool {
        self.count[y * self.width + x] > 0
    }

    /// Exact mean where covered, 0 elsewhere.
    pub fn mean(&self) -> ProbabilityMap {
        let data = self
            .sum
            .iter()
            .zip(&self.count)
            .map(|(&s, &c)| if c == 0 { 0.0 } else { (s / f64::from(c)) as f32 })
            .map(|p| p.clamp(0.0, 1.0))
            .collect();
        ProbabilityMap::from_raw_unchecked(self.width, self.height, data)
    }

    /// `A / (C + eps)`, which is 0 wherever nothing was accumulated.
    pub fn smoothed_mean(&self, eps: f64) -> ProbabilityMap {
        let data = self
            .sum
            .iter()
            .zip(&self.count)
            .map(|(&s, &c)| ((s / (f64::from(c) + eps)) as f32).clamp(0.0, 1.0))
            .collect();
        ProbabilityMap::from_raw_unchecked(self.width, self.height, data)
    }
}

/// Averages per-window predictions onto an `width x height` canvas.
pub fn merge_patch_pred(preds: &[ProbabilityMap], locations: &[Rect], width: usize, height: usize) -> Result<ProbabilityMap> {
    if preds.len() != locations.len() {
        return Err(Error::InvalidParam(format!(
            "{} predictions for {} locations",
            preds.len(),
            locations.len()
        )));
    }
    let mut acc = Accumulator::new(width, height);
    for (p, &r) in preds.iter().zip(locations) {
        acc.add(p, r)?;
    }
    Ok(acc.mean())
}
