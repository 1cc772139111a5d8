use rayon::prelude::*;

use crate::backends::{Patch, PatchBinarizer};
use crate::error::{Error, Result};
use crate::imgcore::{resize_gray, resize_probability, GrayImage, ProbabilityMap, Rect};
use crate::patching::tile_rects;

/// Sliding-window rectangles at one scale: side `min(scale, W, H)`, stride
/// `side * stride_fraction`, last row and column flush with the image edge.
pub fn window_rects(width: usize, height: usize, scale: usize, stride_fraction: f64) -> Result<Vec<Rect>> {
    if !(stride_fraction > 0.0 && stride_fraction <= 1.0) {
        return Err(Error::InvalidParam(format!(
            "stride fraction must be in (0, 1], got {stride_fraction}"
        )));
    }
    tile_rects(width, height, scale, 1.0 - stride_fraction)
}

/// Crops the windows and resizes each to `target_side` when given.
pub fn sliding_window(
    img: &GrayImage,
    scale: usize,
    stride_fraction: f64,
    target_side: Option<usize>,
) -> Result<(Vec<GrayImage>, Vec<Rect>)> {
    let rects = window_rects(img.width(), img.height(), scale, stride_fraction)?;
    let patches = rects
        .iter()
        .map(|&r| prepare_patch(img, r, target_side))
        .collect::<Result<Vec<_>>>()?;
    Ok((patches, rects))
}

fn prepare_patch(img: &GrayImage, rect: Rect, target_side: Option<usize>) -> Result<GrayImage> {
    let crop = img.crop(rect)?;
    Ok(match target_side {
        Some(s) => resize_gray(&crop, s, s),
        None => crop,
    })
}

/// Runs the backend on one window and returns the prediction at the window's native size.
pub fn predict_window(img: &GrayImage, rect: Rect, backend: &dyn PatchBinarizer) -> Result<ProbabilityMap> {
    let patch = prepare_patch(img, rect, backend.input_side())?;
    let pred = backend.predict(Patch {
        image: &patch,
        origin: rect,
    })?;
    if pred.dims() != patch.dims() {
        return Err(Error::DimMismatch {
            expected: patch.dims(),
            actual: pred.dims(),
        });
    }
    Ok(resize_probability(&pred, rect.width, rect.height))
}

/// Predicts all windows on the current rayon pool; output order follows `rects`.
pub fn predict_windows(img: &GrayImage, rects: &[Rect], backend: &dyn PatchBinarizer) -> Result<Vec<ProbabilityMap>> {
    rects
        .par_iter()
        .map(|&r| predict_window(img, r, backend))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_counts() {
        assert_eq!(window_rects(512, 512, 512, 0.5).unwrap().len(), 1);
        let xs: Vec<usize> = window_rects(1024, 512, 512, 0.5).unwrap().iter().map(|r| r.x).collect();
        assert_eq!(xs, vec![0, 256, 512]);
        // scale larger than the image shrinks to the short side
        let r = window_rects(300, 200, 768, 0.5).unwrap();
        assert!(r.iter().all(|r| r.width == 200));
        assert!(window_rects(10, 10, 4, 0.0).is_err());
    }

    #[test]
    fn patches_resized_to_target() {
        let img = GrayImage::from_fn(100, 60, |x, y| (x + y) as u8).unwrap();
        let (patches, rects) = sliding_window(&img, 40, 0.5, Some(64)).unwrap();
        assert_eq!(patches.len(), rects.len());
        assert!(patches.iter().all(|p| p.dims() == (64, 64)));
        let (native, _) = sliding_window(&img, 40, 0.5, None).unwrap();
        assert!(native.iter().all(|p| p.dims() == (40, 40)));
    }
}
