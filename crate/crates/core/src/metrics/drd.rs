//! Distance-reciprocal distortion.
//!
//! For every pixel `k` where the prediction disagrees with the ground truth,
//! `DRD_k = sum |gt(n) - pred(k)| * W(n)` over the 5x5 neighbourhood of `k`
//! (neighbours outside the image contribute nothing), with
//! `W(i, j) = 1 / sqrt(i^2 + j^2)` normalised to sum to 1 and `W(0, 0) = 0`.
//! The total is divided by NUBN, the number of 8x8 ground-truth blocks
//! (grid anchored at the origin, partial edge blocks included) that contain
//! both foreground and background.

use std::sync::OnceLock;

use crate::imgcore::BinaryMask;

pub const DRD_RADIUS: usize = 2;
pub const NUBN_BLOCK: usize = 8;

/// Normalised 5x5 weight matrix, indexed `[dy + 2][dx + 2]`.
pub fn drd_weights() -> &'static [[f64; 5]; 5] {
    static WEIGHTS: OnceLock<[[f64; 5]; 5]> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let mut w = [[0.0; 5]; 5];
        let mut total = 0.0;
        for (i, row) in w.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let (di, dj) = (i as f64 - 2.0, j as f64 - 2.0);
                if di != 0.0 || dj != 0.0 {
                    *v = 1.0 / (di * di + dj * dj).sqrt();
                    total += *v;
                }
            }
        }
        for v in w.iter_mut().flatten() {
            *v /= total;
        }
        w
    })
}

/// Number of non-uniform ground-truth blocks.
pub fn nubn(gt: &BinaryMask) -> usize {
    let (w, h) = gt.dims();
    let mut count = 0;
    for by in (0..h).step_by(NUBN_BLOCK) {
        for bx in (0..w).step_by(NUBN_BLOCK) {
            let (mut fg, mut bg) = (false, false);
            'block: for y in by..(by + NUBN_BLOCK).min(h) {
                for &v in &gt.row(y)[bx..(bx + NUBN_BLOCK).min(w)] {
                    if v {
                        fg = true;
                    } else {
                        bg = true;
                    }
                    if fg && bg {
                        break 'block;
                    }
                }
            }
            if fg && bg {
                count += 1;
            }
        }
    }
    count
}

/// Sum of per-pixel distortions over all disagreeing pixels.
pub fn drd_sum(pred: &BinaryMask, gt: &BinaryMask) -> f64 {
    let (w, h) = gt.dims();
    let weights = drd_weights();
    let r = DRD_RADIUS as i64;
    let mut total = 0.0;
    for y in 0..h {
        for x in 0..w {
            let p = pred.get(x, y);
            if p == gt.get(x, y) {
                continue;
            }
            for dy in -r..=r {
                let ny = y as i64 + dy;
                if ny < 0 || ny >= h as i64 {
                    continue;
                }
                for dx in -r..=r {
                    let nx = x as i64 + dx;
                    if nx < 0 || nx >= w as i64 {
                        continue;
                    }
                    if gt.get(nx as usize, ny as usize) != p {
                        total += weights[(dy + r) as usize][(dx + r) as usize];
                    }
                }
            }
        }
    }
    total
}
