use crate::error::{Error, Result};

use super::raster::BinaryMask;

/// All-ones rectangular kernel with odd sides, centred on its middle pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuringElement {
    kernel_w: usize,
    kernel_h: usize,
}

impl StructuringElement {
    pub fn new(kernel_w: usize, kernel_h: usize) -> Result<Self> {
        if kernel_w == 0 || kernel_h == 0 || kernel_w.is_multiple_of(2) || kernel_h.is_multiple_of(2) {
            return Err(Error::InvalidParam(format!(
                "structuring element must have odd positive sides, got {kernel_w}x{kernel_h}"
            )));
        }
        Ok(Self { kernel_w, kernel_h })
    }

    /// Builds a kernel from real-valued sides, each rounded to the nearest odd integer (minimum 1).
    pub fn from_real(width: f64, height: f64) -> Self {
        Self {
            kernel_w: nearest_odd(width),
            kernel_h: nearest_odd(height),
        }
    }

    pub fn kernel_w(&self) -> usize {
        self.kernel_w
    }

    pub fn kernel_h(&self) -> usize {
        self.kernel_h
    }

    pub fn transposed(&self) -> Self {
        Self {
            kernel_w: self.kernel_h,
            kernel_h: self.kernel_w,
        }
    }
}

/// Nearest odd integer to `v`, ties rounding up, never below 1.
pub fn nearest_odd(v: f64) -> usize {
    if !v.is_finite() || v <= 1.0 {
        return 1;
    }
    let m = ((v - 1.0) / 2.0 + 0.5).floor();
    2 * m as usize + 1
}

/// Binary dilation by a rectangular kernel; pixels outside the image count as background.
///
/// Separable: a horizontal pass followed by a vertical pass, each using a
/// running count of set pixels inside the window.
pub fn dilate(mask: &BinaryMask, se: StructuringElement) -> BinaryMask {
    let (w, h) = mask.dims();
    let rx = se.kernel_w / 2;
    let ry = se.kernel_h / 2;
    if rx == 0 && ry == 0 {
        return mask.clone();
    }

    let mut horiz = vec![false; w * h];
    for y in 0..h {
        let row = mask.row(y);
        let out = &mut horiz[y * w..(y + 1) * w];
        dilate_line(w, rx, |i| row[i], |i, v| out[i] = v);
    }

    let mut data = vec![false; w * h];
    for x in 0..w {
        dilate_line(h, ry, |i| horiz[i * w + x], |i, v| data[i * w + x] = v);
    }
    BinaryMask::new(w, h, data).expect("dims preserved")
}

fn dilate_line(len: usize, radius: usize, get: impl Fn(usize) -> bool, mut set: impl FnMut(usize, bool)) {
    if radius == 0 {
        for i in 0..len {
            set(i, get(i));
        }
        return;
    }
    // count of set pixels in [i - radius, i + radius]
    let mut count = (0..=radius.min(len - 1)).filter(|&i| get(i)).count();
    for i in 0..len {
        set(i, count > 0);
        let enter = i + radius + 1;
        if enter < len && get(enter) {
            count += 1;
        }
        if i >= radius && get(i - radius) {
            count -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgcore::Rect;
    use proptest::prelude::*;

    fn naive_dilate(mask: &BinaryMask, kw: usize, kh: usize) -> BinaryMask {
        let (w, h) = mask.dims();
        let (rx, ry) = ((kw / 2) as i64, (kh / 2) as i64);
        BinaryMask::from_fn(w, h, |x, y| {
            for dy in -ry..=ry {
                for dx in -rx..=rx {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64 && mask.get(nx as usize, ny as usize) {
                        return true;
                    }
                }
            }
            false
        })
        .unwrap()
    }

    fn random_mask(w: usize, h: usize, seed: u64, density: u64) -> BinaryMask {
        let mut s = seed | 1;
        BinaryMask::from_fn(w, h, |_, _| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s % 100 < density
        })
        .unwrap()
    }

    #[test]
    fn rejects_even_kernel() {
        assert!(StructuringElement::new(2, 3).is_err());
        assert!(StructuringElement::new(3, 0).is_err());
    }

    #[test]
    fn odd_rounding() {
        assert_eq!(nearest_odd(3.0), 3);
        assert_eq!(nearest_odd(9.0), 9);
        assert_eq!(nearest_odd(2.0), 3);
        assert_eq!(nearest_odd(3.9), 3);
        assert_eq!(nearest_odd(4.1), 5);
        assert_eq!(nearest_odd(0.0), 1);
        assert_eq!(nearest_odd(0.7), 1);
    }

    #[test]
    fn single_pixel_grows_to_block() {
        let mut m = BinaryMask::filled(7, 7, false).unwrap();
        m.set(3, 3, true);
        let d = dilate(&m, StructuringElement::new(3, 3).unwrap());
        let mut expected = BinaryMask::filled(7, 7, false).unwrap();
        expected.fill_rect(Rect::new(2, 2, 3, 3), true);
        assert_eq!(d, expected);
    }

    #[test]
    fn unit_kernel_is_identity() {
        let m = random_mask(13, 9, 42, 30);
        assert_eq!(dilate(&m, StructuringElement::new(1, 1).unwrap()), m);
    }

    #[test]
    fn matches_window_scan_16x16_3x7() {
        let m = random_mask(16, 16, 7, 10);
        let se = StructuringElement::new(3, 7).unwrap();
        assert_eq!(dilate(&m, se), naive_dilate(&m, 3, 7));
    }

    #[test]
    fn kernel_larger_than_image() {
        let mut m = BinaryMask::filled(3, 2, false).unwrap();
        m.set(0, 0, true);
        let d = dilate(&m, StructuringElement::new(11, 11).unwrap());
        assert_eq!(d.count(), 6);
    }

    proptest! {
        #[test]
        fn dilation_properties(w in 1usize..20, h in 1usize..20, kw in 0usize..5, kh in 0usize..5, seed in any::<u64>()) {
            let (kw, kh) = (2 * kw + 1, 2 * kh + 1);
            let m = random_mask(w, h, seed, 15);
            let d = dilate(&m, StructuringElement::new(kw, kh).unwrap());
            prop_assert_eq!(&d, &naive_dilate(&m, kw, kh));
            // extensive
            prop_assert!(m.data().iter().zip(d.data()).all(|(&a, &b)| !a || b));
            // monotone in the kernel
            let bigger = dilate(&m, StructuringElement::new(kw + 2, kh).unwrap());
            prop_assert!(d.data().iter().zip(bigger.data()).all(|(&a, &b)| !a || b));
            // monotone in the mask
            let mut superset = m.clone();
            superset.set(w / 2, h / 2, true);
            let ds = dilate(&superset, StructuringElement::new(kw, kh).unwrap());
            prop_assert!(d.data().iter().zip(ds.data()).all(|(&a, &b)| !a || b));
        }
    }
}
