//! Patch-level binarizers.
//!
//! Every backend maps a grayscale patch to a probability map of the same size.
//! The inference pipeline resizes patches to [`PatchBinarizer::input_side`]
//! before calling [`PatchBinarizer::predict`] and resizes the result back.

mod model;
mod oracle;
mod otsu;
mod sauvola;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use model::{ModelBinarizer, MODEL_INPUT, MODEL_OUTPUT, MODEL_SIDE};
pub use oracle::OracleBinarizer;
pub use otsu::{between_class_variance, histogram, otsu_binarize, otsu_threshold, OtsuBinarizer};
pub use sauvola::{sauvola_binarize, SauvolaBinarizer, SauvolaParams};

use crate::error::{Error, Result};
use crate::imgcore::{GrayImage, ProbabilityMap, Rect};

/// Which intensity extreme carries the text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    #[default]
    DarkText,
    LightText,
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dark" | "dark-text" => Ok(Polarity::DarkText),
            "light" | "light-text" => Ok(Polarity::LightText),
            other => Err(Error::InvalidParam(format!("unknown polarity `{other}`"))),
        }
    }
}

/// A patch as seen by a backend: pixels (already resized) plus where they came from.
#[derive(Debug, Clone, Copy)]
pub struct Patch<'a> {
    pub image: &'a GrayImage,
    /// Source rectangle in full-image coordinates.
    pub origin: Rect,
}

pub trait PatchBinarizer: Send + Sync {
    fn name(&self) -> &str;

    /// Side the patch must be resized to, or `None` for any size.
    fn input_side(&self) -> Option<usize>;

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap>;
}

impl<T: PatchBinarizer + ?Sized> PatchBinarizer for Box<T> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn input_side(&self) -> Option<usize> {
        (**self).input_side()
    }

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap> {
        (**self).predict(patch)
    }
}
