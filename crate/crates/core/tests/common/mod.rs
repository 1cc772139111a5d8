//! Brute-force reference implementations and generators shared by the integration tests.
//!
//! Nothing here calls into the library's algorithms; masks are plain
//! `Vec<Vec<bool>>` grids indexed `[y][x]`.

#![allow(dead_code)]

use glyphpatch::imgcore::{BinaryMask, GrayImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Grid = Vec<Vec<bool>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_grid(m: &BinaryMask) -> Grid {
    (0..m.height()).map(|y| (0..m.width()).map(|x| m.get(x, y)).collect()).collect()
}

pub fn from_grid(g: &Grid) -> BinaryMask {
    BinaryMask::from_fn(g[0].len(), g.len(), |x, y| g[y][x]).unwrap()
}

/// Ground truth built from random strokes, plus a prediction derived from it
/// by flipping pixels, shifting or thickening, so metrics see realistic errors.
pub fn random_pair(r: &mut ChaCha8Rng) -> (BinaryMask, BinaryMask) {
    let w = r.random_range(1..=64);
    let h = r.random_range(1..=64);
    let mut gt = vec![vec![false; w]; h];
    for _ in 0..r.random_range(0..8) {
        let (x0, y0) = (r.random_range(0..w), r.random_range(0..h));
        let (rw, rh) = (r.random_range(1..=w.min(12)), r.random_range(1..=h.min(12)));
        for row in gt.iter_mut().skip(y0).take(rh) {
            for v in row.iter_mut().skip(x0).take(rw) {
                *v = true;
            }
        }
    }
    let noise = r.random_range(0.0..0.3);
    let shift = r.random_range(0..3usize);
    let pred: Grid = (0..h)
        .map(|y| {
            (0..w)
                .map(|x| {
                    let base = if x >= shift { gt[y][x - shift] } else { false };
                    base ^ r.random_bool(noise)
                })
                .collect()
        })
        .collect();
    if r.random_bool(0.1) {
        // pure noise ground truth
        for row in gt.iter_mut() {
            for v in row.iter_mut() {
                *v = r.random_bool(0.5);
            }
        }
    }
    (from_grid(&pred), from_grid(&gt))
}

pub struct Counts {
    pub tp: f64,
    pub fp: f64,
    pub fn_: f64,
    pub tn: f64,
}

pub fn counts(pred: &Grid, gt: &Grid) -> Counts {
    let mut c = Counts {
        tp: 0.0,
        fp: 0.0,
        fn_: 0.0,
        tn: 0.0,
    };
    for (pr, gr) in pred.iter().zip(gt) {
        for (&p, &g) in pr.iter().zip(gr) {
            match (p, g) {
                (true, true) => c.tp += 1.0,
                (true, false) => c.fp += 1.0,
                (false, true) => c.fn_ += 1.0,
                (false, false) => c.tn += 1.0,
            }
        }
    }
    c
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        200.0 * p * r / (p + r)
    }
}

pub fn fm(pred: &Grid, gt: &Grid) -> f64 {
    let c = counts(pred, gt);
    let p = if c.tp + c.fp == 0.0 { 0.0 } else { c.tp / (c.tp + c.fp) };
    let r = if c.tp + c.fn_ == 0.0 { 0.0 } else { c.tp / (c.tp + c.fn_) };
    harmonic(p, r)
}

pub fn psnr(pred: &Grid, gt: &Grid, cap: f64) -> f64 {
    let c = counts(pred, gt);
    let mse = (c.fp + c.fn_) / (c.tp + c.fp + c.fn_ + c.tn);
    if mse == 0.0 {
        cap
    } else {
        (10.0 * (1.0 / mse).log10()).min(cap)
    }
}

/// Zhang-Suen thinning on a zero-padded copy.
pub fn zhang_suen(g: &Grid) -> Grid {
    let h = g.len();
    let w = g[0].len();
    let mut im = vec![vec![0u8; w + 2]; h + 2];
    for y in 0..h {
        for x in 0..w {
            im[y + 1][x + 1] = g[y][x] as u8;
        }
    }
    loop {
        let mut any = false;
        for step in 0..2 {
            let mut kill = Vec::new();
            for y in 1..=h {
                for x in 1..=w {
                    if im[y][x] == 0 {
                        continue;
                    }
                    let p2 = im[y - 1][x];
                    let p3 = im[y - 1][x + 1];
                    let p4 = im[y][x + 1];
                    let p5 = im[y + 1][x + 1];
                    let p6 = im[y + 1][x];
                    let p7 = im[y + 1][x - 1];
                    let p8 = im[y][x - 1];
                    let p9 = im[y - 1][x - 1];
                    let ring = [p2, p3, p4, p5, p6, p7, p8, p9, p2];
                    let b: u8 = ring[..8].iter().sum();
                    let a = ring.windows(2).filter(|s| s[0] == 0 && s[1] == 1).count();
                    let (c1, c2) = if step == 0 {
                        (p2 * p4 * p6, p4 * p6 * p8)
                    } else {
                        (p2 * p4 * p8, p2 * p6 * p8)
                    };
                    if (2..=6).contains(&b) && a == 1 && c1 == 0 && c2 == 0 {
                        kill.push((y, x));
                    }
                }
            }
            any |= !kill.is_empty();
            for (y, x) in kill {
                im[y][x] = 0;
            }
        }
        if !any {
            break;
        }
    }
    (1..=h).map(|y| (1..=w).map(|x| im[y][x] == 1).collect()).collect()
}

pub fn fps(pred: &Grid, gt: &Grid) -> f64 {
    let c = counts(pred, gt);
    let p = if c.tp + c.fp == 0.0 { 0.0 } else { c.tp / (c.tp + c.fp) };
    let sk = zhang_suen(gt);
    let (mut hit, mut total) = (0.0, 0.0);
    for (y, row) in sk.iter().enumerate() {
        for (x, &s) in row.iter().enumerate() {
            if s {
                total += 1.0;
                if pred[y][x] {
                    hit += 1.0;
                }
            }
        }
    }
    let r = if total == 0.0 { 0.0 } else { hit / total };
    harmonic(p, r)
}

/// Returns `(sum of per-pixel distortions, NUBN)`.
pub fn drd_parts(pred: &Grid, gt: &Grid) -> (f64, usize) {
    let h = gt.len() as i64;
    let w = gt[0].len() as i64;
    let mut wm = [[0.0f64; 5]; 5];
    let mut norm = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let d = (((i as f64) - 2.0).powi(2) + ((j as f64) - 2.0).powi(2)).sqrt();
            if d > 0.0 {
                wm[i][j] = 1.0 / d;
                norm += wm[i][j];
            }
        }
    }
    let mut sum = 0.0;
    for y in 0..h {
        for x in 0..w {
            let p = pred[y as usize][x as usize];
            if p == gt[y as usize][x as usize] {
                continue;
            }
            let mut dk = 0.0;
            for i in 0..5i64 {
                for j in 0..5i64 {
                    let (yy, xx) = (y + i - 2, x + j - 2);
                    if yy < 0 || xx < 0 || yy >= h || xx >= w {
                        continue;
                    }
                    let diff = (gt[yy as usize][xx as usize] as i32 - p as i32).abs() as f64;
                    dk += diff * wm[i as usize][j as usize] / norm;
                }
            }
            sum += dk;
        }
    }
    let mut nubn = 0;
    for by in (0..h as usize).step_by(8) {
        for bx in (0..w as usize).step_by(8) {
            let mut ones = 0;
            let mut cells = 0;
            for row in gt.iter().skip(by).take(8) {
                for &v in row.iter().skip(bx).take(8) {
                    cells += 1;
                    ones += v as usize;
                }
            }
            if ones != 0 && ones != cells {
                nubn += 1;
            }
        }
    }
    (sum, nubn)
}

pub fn drd(pred: &Grid, gt: &Grid) -> f64 {
    let (sum, nubn) = drd_parts(pred, gt);
    sum / nubn.max(1) as f64
}

/// Between-class variance of the split `{v <= t} | {v > t}` straight from pixels.
pub fn otsu_variance(pixels: &[u8], t: u8) -> f64 {
    let lo: Vec<f64> = pixels.iter().filter(|&&v| v <= t).map(|&v| v as f64).collect();
    let hi: Vec<f64> = pixels.iter().filter(|&&v| v > t).map(|&v| v as f64).collect();
    if lo.is_empty() || hi.is_empty() {
        return 0.0;
    }
    let n = pixels.len() as f64;
    let (w0, w1) = (lo.len() as f64 / n, hi.len() as f64 / n);
    let m0 = lo.iter().sum::<f64>() / lo.len() as f64;
    let m1 = hi.iter().sum::<f64>() / hi.len() as f64;
    w0 * w1 * (m0 - m1) * (m0 - m1)
}

/// Sauvola with explicit window loops; dark text (`v < T`) marked true.
pub fn sauvola_naive(img: &GrayImage, window: usize, k: f64, r: f64) -> Grid {
    let (w, h) = img.dims();
    let rad = (window / 2) as i64;
    (0..h as i64)
        .map(|y| {
            (0..w as i64)
                .map(|x| {
                    let mut vals = Vec::new();
                    for yy in y - rad..=y + rad {
                        for xx in x - rad..=x + rad {
                            if yy >= 0 && xx >= 0 && yy < h as i64 && xx < w as i64 {
                                vals.push(img.get(xx as usize, yy as usize) as f64);
                            }
                        }
                    }
                    let n = vals.len() as f64;
                    let m = vals.iter().sum::<f64>() / n;
                    let s = (vals.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n).sqrt();
                    (img.get(x as usize, y as usize) as f64) < m * (1.0 + k * (s / r - 1.0))
                })
                .collect()
        })
        .collect()
}

/// Mean of component heights inside `[Q1, Q3]`, quartiles by linear interpolation.
pub fn iqr_mean_height(heights: &[usize]) -> f64 {
    let mut hs = heights.to_vec();
    hs.sort_unstable();
    let q = |p: f64| {
        let pos = p * (hs.len() - 1) as f64;
        let (i, frac) = (pos as usize, pos - (pos as usize) as f64);
        let next = hs[(i + 1).min(hs.len() - 1)] as f64;
        hs[i] as f64 + (next - hs[i] as f64) * frac
    };
    let (q1, q3) = (q(0.25), q(0.75));
    let inside: Vec<f64> = hs.iter().map(|&v| v as f64).filter(|&v| v >= q1 && v <= q3).collect();
    if inside.is_empty() {
        q(0.5)
    } else {
        inside.iter().sum::<f64>() / inside.len() as f64
    }
}

/// Heights of 8-connected components by flood fill.
pub fn component_heights(g: &Grid) -> Vec<usize> {
    let h = g.len();
    let w = g[0].len();
    let mut seen = vec![vec![false; w]; h];
    let mut out = Vec::new();
    for sy in 0..h {
        for sx in 0..w {
            if !g[sy][sx] || seen[sy][sx] {
                continue;
            }
            let (mut top, mut bottom) = (sy, sy);
            let mut stack = vec![(sx, sy)];
            seen[sy][sx] = true;
            while let Some((x, y)) = stack.pop() {
                top = top.min(y);
                bottom = bottom.max(y);
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if g[ny][nx] && !seen[ny][nx] {
                            seen[ny][nx] = true;
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            out.push(bottom - top + 1);
        }
    }
    out
}

/// Random-rectangle "inscription": returns the mask and the rectangles drawn.
pub fn rect_inscription(r: &mut ChaCha8Rng) -> BinaryMask {
    let w = r.random_range(64..=360);
    let h = r.random_range(64..=300);
    let ch = r.random_range(5..=20usize);
    let n = r.random_range(1..=90);
    let mut g = vec![vec![false; w]; h];
    for _ in 0..n {
        let rh = ((ch as f64) * r.random_range(0.5..1.6)).round().max(1.0) as usize;
        let rw = r.random_range(1..=ch);
        let x0 = r.random_range(0..w);
        let y0 = r.random_range(0..h);
        for row in g.iter_mut().skip(y0).take(rh) {
            for v in row.iter_mut().skip(x0).take(rw) {
                *v = true;
            }
        }
    }
    from_grid(&g)
}

/// Every file under `dir` as `(relative path, bytes)`, sorted.
pub fn tree_bytes(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}
