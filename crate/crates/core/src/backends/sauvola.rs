use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::{GrayImage, ProbabilityMap};

use super::{Patch, PatchBinarizer, Polarity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SauvolaParams {
    /// Odd window side in pixels.
    pub window: usize,
    /// Sensitivity.
    pub k: f64,
    /// Dynamic range of the standard deviation.
    pub r: f64,
}

impl Default for SauvolaParams {
    fn default() -> Self {
        Self {
            window: 25,
            k: 0.2,
            r: 128.0,
        }
    }
}

impl SauvolaParams {
    pub fn validate(&self) -> Result<()> {
        if self.window < 3 || self.window.is_multiple_of(2) {
            return Err(Error::InvalidParam(format!(
                "sauvola window must be odd and >= 3, got {}",
                self.window
            )));
        }
        if !(self.r > 0.0) {
            return Err(Error::InvalidParam(format!("sauvola r must be positive, got {}", self.r)));
        }
        Ok(())
    }
}

/// Summed-area tables of values and squared values, `(w + 1) x (h + 1)` with a zero border.
struct IntegralImages {
    stride: usize,
    sum: Vec<u64>,
    sq: Vec<u64>,
}

impl IntegralImages {
    fn new(img: &GrayImage) -> Self {
        let (w, h) = img.dims();
        let stride = w + 1;
        let mut sum = vec![0u64; stride * (h + 1)];
        let mut sq = vec![0u64; stride * (h + 1)];
        for y in 0..h {
            let (mut row_s, mut row_q) = (0u64, 0u64);
            for x in 0..w {
                let v = img.get(x, y) as u64;
                row_s += v;
                row_q += v * v;
                let i = (y + 1) * stride + x + 1;
                sum[i] = sum[i - stride] + row_s;
                sq[i] = sq[i - stride] + row_q;
            }
        }
        Self { stride, sum, sq }
    }

    /// Sum and sum of squares over `[x0, x1) x [y0, y1)`.
    fn window(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> (u64, u64) {
        let s = self.stride;
        let rect = |t: &[u64]| t[y1 * s + x1] + t[y0 * s + x0] - t[y0 * s + x1] - t[y1 * s + x0];
        (rect(&self.sum), rect(&self.sq))
    }
}

/// Local mean and standard deviation from exact integer window moments.
pub(crate) fn window_moments(n: u64, sum: u64, sq: u64) -> (f64, f64) {
    let mean = sum as f64 / n as f64;
    let num = n as u128 * sq as u128 - sum as u128 * sum as u128;
    let var = num as f64 / (n as f64 * n as f64);
    (mean, var.sqrt())
}

/// Sauvola thresholding, `T = m * (1 + k * (s / r - 1))`, with windows clipped at the border.
pub fn sauvola_binarize(img: &GrayImage, params: &SauvolaParams, polarity: Polarity) -> Result<ProbabilityMap> {
    params.validate()?;
    let source = match polarity {
        Polarity::DarkText => img.clone(),
        Polarity::LightText => img.inverted(),
    };
    let (w, h) = source.dims();
    let integral = IntegralImages::new(&source);
    let radius = params.window / 2;
    let mut data = Vec::with_capacity(w * h);
    for y in 0..h {
        let (y0, y1) = (y.saturating_sub(radius), (y + radius + 1).min(h));
        for x in 0..w {
            let (x0, x1) = (x.saturating_sub(radius), (x + radius + 1).min(w));
            let n = ((x1 - x0) * (y1 - y0)) as u64;
            let (s, q) = integral.window(x0, y0, x1, y1);
            let (mean, std) = window_moments(n, s, q);
            let t = mean * (1.0 + params.k * (std / params.r - 1.0));
            data.push(if (source.get(x, y) as f64) < t { 1.0 } else { 0.0 });
        }
    }
    Ok(ProbabilityMap::from_raw_unchecked(w, h, data))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SauvolaBinarizer {
    pub params: SauvolaParams,
    pub polarity: Polarity,
}

impl PatchBinarizer for SauvolaBinarizer {
    fn name(&self) -> &str {
        "sauvola"
    }

    fn input_side(&self) -> Option<usize> {
        None
    }

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap> {
        sauvola_binarize(patch.image, &self.params, self.polarity)
    }
}
