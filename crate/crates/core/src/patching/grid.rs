use crate::error::{Error, Result};
use crate::imgcore::{BinaryMask, GrayImage, Rect};

use super::{extract_batch, PatchBatch, PatchSpec, Region};

/// Window offsets along one axis: `0, stride, 2*stride, ...`, with the last window snapped
/// flush to the far edge so the whole axis is covered.
pub fn axis_offsets(dim: usize, side: usize, stride: usize) -> Vec<usize> {
    assert!(side >= 1 && side <= dim && stride >= 1);
    let mut offsets = Vec::new();
    let mut pos = 0;
    loop {
        if pos + side >= dim {
            offsets.push(dim - side);
            return offsets;
        }
        offsets.push(pos);
        pos += stride;
    }
}

/// Square windows of `side` (clipped to the smaller image dimension) tiling the image.
pub fn tile_rects(width: usize, height: usize, side: usize, overlap_fraction: f64) -> Result<Vec<Rect>> {
    if !(0.0..1.0).contains(&overlap_fraction) {
        return Err(Error::InvalidParam(format!(
            "overlap fraction must be in [0, 1), got {overlap_fraction}"
        )));
    }
    if side == 0 {
        return Err(Error::InvalidParam("window side must be positive".into()));
    }
    let side = side.min(width).min(height);
    let stride = ((side as f64 * (1.0 - overlap_fraction)).floor() as usize).max(1);
    let xs = axis_offsets(width, side, stride);
    let ys = axis_offsets(height, side, stride);
    Ok(ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| Rect::square(x, y, side)))
        .collect())
}

/// Fixed-size overlapping tiling, the usual comparison baseline; crops keep their native size.
pub fn fixed_grid_patches(
    img: &GrayImage,
    gt: Option<&BinaryMask>,
    size: usize,
    overlap_fraction: f64,
) -> Result<PatchBatch> {
    let rects = tile_rects(img.width(), img.height(), size, overlap_fraction)?;
    let side = rects[0].width;
    let specs = rects
        .iter()
        .map(|r| PatchSpec {
            x: r.x,
            y: r.y,
            side: r.width,
            region: Region::Grid,
            anchor_x: r.x + side / 2,
            anchor_y: r.y + side / 2,
            k: 0.0,
        })
        .collect();
    extract_batch(img, gt, specs, side)
}
