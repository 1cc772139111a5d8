use std::path::Path;

use image::{ImageBuffer, Luma, Rgb};

use crate::error::{Error, Result};

use super::raster::{BinaryMask, GrayImage};

fn image_err(path: &Path, source: image::ImageError) -> Error {
    Error::Image {
        path: path.to_path_buf(),
        source,
    }
}

/// Loads any supported image and converts it to 8-bit luma.
pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let luma = image::open(path).map_err(|e| image_err(path, e))?.into_luma8();
    let (w, h) = luma.dimensions();
    GrayImage::new(w as usize, h as usize, luma.into_raw())
}

/// Loads a mask; any pixel above 127 is text.
pub fn load_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let gray = load_gray(path)?;
    let (w, h) = gray.dims();
    BinaryMask::new(w, h, gray.data().iter().map(|&v| v > 127).collect())
}

pub fn image_dims(path: impl AsRef<Path>) -> Result<(usize, usize)> {
    let path = path.as_ref();
    let (w, h) = image::image_dimensions(path).map_err(|e| image_err(path, e))?;
    Ok((w as usize, h as usize))
}

pub fn save_gray(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let buf: ImageBuffer<Luma<u8>, Vec<u8>> =
        ImageBuffer::from_raw(img.width() as u32, img.height() as u32, img.data().to_vec())
            .expect("buffer length matches dims");
    buf.save(path).map_err(|e| image_err(path, e))
}

/// Writes `{0, 255}` single-channel PNG.
pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    save_gray(&mask.to_gray(), path)
}

/// Input image with predicted text tinted red.
pub fn save_overlay(img: &GrayImage, mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if img.dims() != mask.dims() {
        return Err(Error::DimMismatch {
            expected: img.dims(),
            actual: mask.dims(),
        });
    }
    let (w, h) = img.dims();
    let buf = ImageBuffer::from_fn(w as u32, h as u32, |x, y| {
        let v = img.get(x as usize, y as usize);
        if mask.get(x as usize, y as usize) {
            Rgb([v / 2 + 127, v / 2, v / 2])
        } else {
            Rgb([v, v, v])
        }
    });
    buf.save(path).map_err(|e| image_err(path, e))
}
