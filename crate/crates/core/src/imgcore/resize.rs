//! Bilinear resampling for intensities and probabilities, nearest-neighbour for masks.
//!
//! Both use pixel-centre alignment: output pixel `i` samples source coordinate
//! `(i + 0.5) * in / out - 0.5`, clamped to the source extent.

use super::raster::{BinaryMask, GrayImage, ProbabilityMap};

#[derive(Clone, Copy)]
struct Tap {
    lo: usize,
    hi: usize,
    frac: f32,
}

fn bilinear_taps(src: usize, dst: usize) -> Vec<Tap> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| {
            let pos = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(src - 1);
            Tap {
                lo,
                hi,
                frac: (pos - lo as f64) as f32,
            }
        })
        .collect()
}

fn nearest_index(i: usize, src: usize, dst: usize) -> usize {
    // floor((i + 0.5) * src / dst) in exact integer arithmetic
    (((2 * i + 1) * src) / (2 * dst)).min(src - 1)
}

fn bilinear_plane(src: &[f32], sw: usize, sh: usize, dw: usize, dh: usize) -> Vec<f32> {
    let xs = bilinear_taps(sw, dw);
    let ys = bilinear_taps(sh, dh);
    let mut out = Vec::with_capacity(dw * dh);
    for ty in &ys {
        let r0 = &src[ty.lo * sw..(ty.lo + 1) * sw];
        let r1 = &src[ty.hi * sw..(ty.hi + 1) * sw];
        for tx in &xs {
            let top = r0[tx.lo] + (r0[tx.hi] - r0[tx.lo]) * tx.frac;
            let bottom = r1[tx.lo] + (r1[tx.hi] - r1[tx.lo]) * tx.frac;
            out.push(top + (bottom - top) * ty.frac);
        }
    }
    out
}

pub fn resize_gray(img: &GrayImage, out_w: usize, out_h: usize) -> GrayImage {
    assert!(out_w >= 1 && out_h >= 1, "resize target must be at least 1x1");
    if img.dims() == (out_w, out_h) {
        return img.clone();
    }
    let src: Vec<f32> = img.data().iter().map(|&v| f32::from(v)).collect();
    let data = bilinear_plane(&src, img.width(), img.height(), out_w, out_h)
        .into_iter()
        .map(|v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    GrayImage::new(out_w, out_h, data).expect("target dims checked")
}

pub fn resize_probability(map: &ProbabilityMap, out_w: usize, out_h: usize) -> ProbabilityMap {
    assert!(out_w >= 1 && out_h >= 1, "resize target must be at least 1x1");
    if map.dims() == (out_w, out_h) {
        return map.clone();
    }
    let data = bilinear_plane(map.data(), map.width(), map.height(), out_w, out_h)
        .into_iter()
        .map(|v| v.clamp(0.0, 1.0))
        .collect();
    ProbabilityMap::from_raw_unchecked(out_w, out_h, data)
}

pub fn resize_mask(mask: &BinaryMask, out_w: usize, out_h: usize) -> BinaryMask {
    assert!(out_w >= 1 && out_h >= 1, "resize target must be at least 1x1");
    if mask.dims() == (out_w, out_h) {
        return mask.clone();
    }
    let (sw, sh) = mask.dims();
    let xs: Vec<usize> = (0..out_w).map(|i| nearest_index(i, sw, out_w)).collect();
    let mut data = Vec::with_capacity(out_w * out_h);
    for y in 0..out_h {
        let row = mask.row(nearest_index(y, sh, out_h));
        data.extend(xs.iter().map(|&x| row[x]));
    }
    BinaryMask::new(out_w, out_h, data).expect("target dims checked")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_stays_constant() {
        let img = GrayImage::filled(7, 5, 128).unwrap();
        for (w, h) in [(1, 1), (3, 11), (512, 512), (13, 2)] {
            let r = resize_gray(&img, w, h);
            assert!(r.data().iter().all(|&v| v == 128), "{w}x{h}");
        }
        let m = BinaryMask::filled(5, 3, true).unwrap();
        assert_eq!(resize_mask(&m, 9, 8).count(), 72);
    }

    #[test]
    fn identity_resize() {
        let img = GrayImage::from_fn(6, 4, |x, y| (x * 40 + y) as u8).unwrap();
        assert_eq!(resize_gray(&img, 6, 4), img);
        let m = BinaryMask::from_fn(6, 4, |x, y| (x + y) % 3 == 0).unwrap();
        assert_eq!(resize_mask(&m, 6, 4), m);
    }

    #[test]
    fn checker_upscale_keeps_corners() {
        let img = GrayImage::new(2, 2, vec![0, 255, 255, 0]).unwrap();
        let r = resize_gray(&img, 4, 4);
        // corners map to source coordinates -0.25 and 1.25, clamped onto the source pixels
        assert_eq!(r.get(0, 0), 0);
        assert_eq!(r.get(3, 0), 255);
        assert_eq!(r.get(0, 3), 255);
        assert_eq!(r.get(3, 3), 0);
        // (1, 0) samples x = 0.25: 0.75 * 0 + 0.25 * 255
        assert_eq!(r.get(1, 0), 64);
    }

    #[test]
    fn stripe_downscale_nearest() {
        let m = BinaryMask::from_fn(8, 2, |x, _| x % 4 < 2).unwrap();
        let r = resize_mask(&m, 4, 1);
        // oracle: output i reads source floor((i + 0.5) * 2) = 1, 3, 5, 7
        let expected: Vec<bool> = [1usize, 3, 5, 7].iter().map(|&x| x % 4 < 2).collect();
        assert_eq!(r.data(), expected.as_slice());
    }

    #[test]
    fn probability_resize_stays_in_range() {
        let p = ProbabilityMap::new(2, 1, vec![0.0, 1.0]).unwrap();
        let r = resize_probability(&p, 7, 3);
        assert!(r.data().iter().all(|v| (0.0..=1.0).contains(v)));
    }
}
