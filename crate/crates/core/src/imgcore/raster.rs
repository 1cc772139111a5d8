use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle in pixel coordinates, `x`/`y` are the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn new(x: usize, y: usize, width: usize, height: usize) -> Self {
        Self {
            x,
            y,
            width,
            height,
        }
    }

    pub fn square(x: usize, y: usize, side: usize) -> Self {
        Self::new(x, y, side, side)
    }

    pub fn right(&self) -> usize {
        self.x + self.width
    }

    pub fn bottom(&self) -> usize {
        self.y + self.height
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn fits_in(&self, width: usize, height: usize) -> bool {
        self.width >= 1 && self.height >= 1 && self.right() <= width && self.bottom() <= height
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= self.x && x < self.right() && y >= self.y && y < self.bottom()
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDims(format!(
            "raster must be at least 1x1, got {width}x{height}"
        )));
    }
    if width * height != len {
        return Err(Error::InvalidDims(format!(
            "{width}x{height} raster needs {} samples, got {len}",
            width * height
        )));
    }
    Ok(())
}

fn check_crop(rect: Rect, width: usize, height: usize) -> Result<()> {
    if rect.fits_in(width, height) {
        Ok(())
    } else {
        Err(Error::InvalidDims(format!(
            "crop {rect:?} does not fit a {width}x{height} raster"
        )))
    }
}

macro_rules! raster_common {
    ($ty:ident, $px:ty) => {
        impl $ty {
            pub fn width(&self) -> usize {
                self.width
            }

            pub fn height(&self) -> usize {
                self.height
            }

            pub fn dims(&self) -> (usize, usize) {
                (self.width, self.height)
            }

            pub fn len(&self) -> usize {
                self.data.len()
            }

            pub fn is_empty(&self) -> bool {
                self.data.is_empty()
            }

            pub fn data(&self) -> &[$px] {
                &self.data
            }

            pub fn into_data(self) -> Vec<$px> {
                self.data
            }

            #[inline]
            pub fn get(&self, x: usize, y: usize) -> $px {
                self.data[y * self.width + x]
            }

            pub fn row(&self, y: usize) -> &[$px] {
                &self.data[y * self.width..(y + 1) * self.width]
            }

            pub fn crop(&self, rect: Rect) -> Result<Self> {
                check_crop(rect, self.width, self.height)?;
                let mut data = Vec::with_capacity(rect.area());
                for y in rect.y..rect.bottom() {
                    data.extend_from_slice(&self.row(y)[rect.x..rect.right()]);
                }
                Ok(Self {
                    width: rect.width,
                    height: rect.height,
                    data,
                })
            }
        }
    };
}

/// Single-channel 8-bit image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

raster_common!(GrayImage, u8);

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    /// Intensities scaled to `[0, 1]`.
    pub fn normalized(&self) -> Vec<f32> {
        self.data.iter().map(|&v| f32::from(v) / 255.0).collect()
    }

    pub fn inverted(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| 255 - v).collect(),
        }
    }
}

/// Text/non-text label raster, `true` is text foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

raster_common!(BinaryMask, bool);

impl BinaryMask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.data[y * self.width + x] = value;
    }

    /// Sets every pixel of `rect`, clipped to the raster.
    pub fn fill_rect(&mut self, rect: Rect, value: bool) {
        let right = rect.right().min(self.width);
        let bottom = rect.bottom().min(self.height);
        for y in rect.y.min(bottom)..bottom {
            let row = y * self.width;
            self.data[row + rect.x.min(right)..row + right].fill(value);
        }
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }

    pub fn any(&self) -> bool {
        self.data.iter().any(|&v| v)
    }

    pub fn complement(&self) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| !v).collect(),
        }
    }

    /// Row-major indices of the `true` pixels.
    pub fn true_indices(&self) -> Vec<usize> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| v.then_some(i))
            .collect()
    }

    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| if v { 255 } else { 0 }).collect(),
        }
    }

    pub fn to_probability(&self) -> ProbabilityMap {
        ProbabilityMap {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| if v { 1.0 } else { 0.0 }).collect(),
        }
    }
}

/// Per-pixel text probabilities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMap {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

raster_common!(ProbabilityMap, f32);

impl ProbabilityMap {
    /// Fails if any value is outside `[0, 1]` or not finite.
    pub fn new(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if let Some(bad) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParam(format!(
                "probability {bad} outside [0, 1]"
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f32) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Strict `> threshold` cut.
    pub fn threshold(&self, threshold: f32) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&p| p > threshold).collect(),
        }
    }

    /// Pointwise maximum with `other`.
    pub fn max_assign(&mut self, other: &ProbabilityMap) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimMismatch {
                expected: self.dims(),
                actual: other.dims(),
            });
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = a.max(b);
        }
        Ok(())
    }

    /// Probabilities quantized to 8-bit for inspection images.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .map(|&p| (p * 255.0).round().clamp(0.0, 255.0) as u8)
                .collect(),
        }
    }

    pub(crate) fn from_raw_unchecked(width: usize, height: usize, data: Vec<f32>) -> Self {
        debug_assert_eq!(width * height, data.len());
        Self {
            width,
            height,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dims() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(BinaryMask::new(3, 1, vec![true; 3]).is_ok());
    }

    #[test]
    fn crop_extracts_rows() {
        let img = GrayImage::from_fn(4, 3, |x, y| (y * 4 + x) as u8).unwrap();
        let c = img.crop(Rect::new(1, 1, 2, 2)).unwrap();
        assert_eq!(c.data(), &[5, 6, 9, 10]);
        assert!(img.crop(Rect::new(3, 0, 2, 1)).is_err());
    }

    #[test]
    fn probability_range_checked() {
        assert!(ProbabilityMap::new(1, 1, vec![1.5]).is_err());
        assert!(ProbabilityMap::new(1, 1, vec![f32::NAN]).is_err());
        let p = ProbabilityMap::new(2, 1, vec![0.5, 0.51]).unwrap();
        assert_eq!(p.threshold(0.5).data(), &[false, true]);
    }

    #[test]
    fn fill_rect_clips() {
        let mut m = BinaryMask::filled(4, 4, false).unwrap();
        m.fill_rect(Rect::new(2, 2, 5, 5), true);
        assert_eq!(m.count(), 4);
    }
}
