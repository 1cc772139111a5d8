use crate::error::{Error, Result};
use crate::imgcore::{resize_mask, BinaryMask, ProbabilityMap};

use super::{Patch, PatchBinarizer, MODEL_SIDE};

/// Test double that answers every patch with the ground truth under it.
///
/// The crop is resized to the patch size with nearest-neighbour sampling, so the
/// oracle sees the same resize round trip a network backend would.
#[derive(Debug, Clone)]
pub struct OracleBinarizer {
    gt: BinaryMask,
    input_side: Option<usize>,
}

impl OracleBinarizer {
    /// Oracle that mimics a network's fixed input side.
    pub fn new(gt: BinaryMask) -> Self {
        Self {
            gt,
            input_side: Some(MODEL_SIDE),
        }
    }

    pub fn from_optional(gt: Option<BinaryMask>) -> Result<Self> {
        gt.map(Self::new).ok_or(Error::MissingGroundTruth)
    }

    /// Accept patches at their native size (no resize round trip).
    pub fn native(mut self) -> Self {
        self.input_side = None;
        self
    }

    pub fn with_input_side(mut self, side: usize) -> Self {
        self.input_side = Some(side);
        self
    }
}

impl PatchBinarizer for OracleBinarizer {
    fn name(&self) -> &str {
        "oracle"
    }

    fn input_side(&self) -> Option<usize> {
        self.input_side
    }

    fn predict(&self, patch: Patch<'_>) -> Result<ProbabilityMap> {
        if !patch.origin.fits_in(self.gt.width(), self.gt.height()) {
            return Err(Error::DimMismatch {
                expected: self.gt.dims(),
                actual: (patch.origin.right(), patch.origin.bottom()),
            });
        }
        let crop = self.gt.crop(patch.origin)?;
        let (w, h) = patch.image.dims();
        Ok(resize_mask(&crop, w, h).to_probability())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgcore::{resize_gray, GrayImage, Rect};

    fn gt() -> BinaryMask {
        BinaryMask::from_fn(40, 30, |x, y| (x / 5 + y / 3) % 2 == 0).unwrap()
    }

    #[test]
    fn full_image_patch_is_exact_gt() {
        let img = GrayImage::filled(40, 30, 100).unwrap();
        let oracle = OracleBinarizer::new(gt()).native();
        let p = oracle
            .predict(Patch {
                image: &img,
                origin: Rect::new(0, 0, 40, 30),
            })
            .unwrap();
        assert_eq!(p.threshold(0.5), gt());
    }

    #[test]
    fn resized_patch_is_binary() {
        let img = GrayImage::filled(40, 30, 100).unwrap();
        let crop = resize_gray(&img.crop(Rect::square(3, 4, 17)).unwrap(), 512, 512);
        let oracle = OracleBinarizer::new(gt());
        let p = oracle
            .predict(Patch {
                image: &crop,
                origin: Rect::square(3, 4, 17),
            })
            .unwrap();
        assert_eq!(p.dims(), (512, 512));
        assert!(p.data().iter().all(|&v| v == 0.0 || v == 1.0));
    }

    #[test]
    fn missing_gt() {
        assert!(matches!(OracleBinarizer::from_optional(None), Err(Error::MissingGroundTruth)));
    }

    #[test]
    fn origin_outside_gt() {
        let img = GrayImage::filled(10, 10, 0).unwrap();
        let oracle = OracleBinarizer::new(gt()).native();
        let err = oracle.predict(Patch {
            image: &img,
            origin: Rect::square(35, 25, 10),
        });
        assert!(err.is_err());
    }
}
