//! DIBCO-style binarization metrics: PSNR, F-measure, pseudo-F-measure and DRD.
//!
//! Text is the positive class. Pseudo-recall is measured against the
//! Zhang-Suen skeleton of the ground truth (see [`skeletonize`]).

mod dirs;
mod drd;
mod skeleton;

use log::warn;
use serde::{Deserialize, Serialize};

pub use dirs::{evaluate_dirs, write_eval_csv, EvalSummary};
pub use drd::{drd_sum, drd_weights, nubn, DRD_RADIUS, NUBN_BLOCK};
pub use skeleton::skeletonize;

use crate::error::{Error, Result};
use crate::imgcore::BinaryMask;

pub const DEFAULT_PSNR_CAP: f64 = 100.0;

fn check_dims(pred: &BinaryMask, gt: &BinaryMask) -> Result<()> {
    if pred.dims() != gt.dims() {
        return Err(Error::DimMismatch {
            expected: gt.dims(),
            actual: pred.dims(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl Confusion {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of two fractions, in percent; 0 when both are 0.
fn f_score(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        200.0 * p * r / (p + r)
    }
}

pub fn confusion(pred: &BinaryMask, gt: &BinaryMask) -> Result<Confusion> {
    check_dims(pred, gt)?;
    let mut c = Confusion::default();
    for (&p, &g) in pred.data().iter().zip(gt.data()) {
        match (p, g) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => c.tn += 1,
        }
    }
    Ok(c)
}

pub fn f_measure(pred: &BinaryMask, gt: &BinaryMask) -> Result<f64> {
    let c = confusion(pred, gt)?;
    Ok(f_score(c.precision(), c.recall()))
}

/// `10 log10(1 / MSE)` over `{0, 1}` maps, capped at `cap` (also used when MSE is 0).
pub fn psnr_capped(pred: &BinaryMask, gt: &BinaryMask, cap: f64) -> Result<f64> {
    let c = confusion(pred, gt)?;
    let mse = (c.fp + c.fn_) as f64 / c.total() as f64;
    if mse == 0.0 {
        return Ok(cap);
    }
    Ok((10.0 * (1.0 / mse).log10()).min(cap))
}

pub fn psnr(pred: &BinaryMask, gt: &BinaryMask) -> Result<f64> {
    psnr_capped(pred, gt, DEFAULT_PSNR_CAP)
}

/// Precision as usual, recall over the skeleton of `gt`.
pub fn pseudo_f_measure(pred: &BinaryMask, gt: &BinaryMask) -> Result<f64> {
    check_dims(pred, gt)?;
    Ok(pseudo_f_with_skeleton(pred, gt, &skeletonize(gt)))
}

fn pseudo_f_with_skeleton(pred: &BinaryMask, gt: &BinaryMask, skeleton: &BinaryMask) -> f64 {
    let (mut tp, mut fp, mut skel_hit, mut skel_total) = (0u64, 0u64, 0u64, 0u64);
    for ((&p, &g), &s) in pred.data().iter().zip(gt.data()).zip(skeleton.data()) {
        if p {
            if g {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        if s {
            skel_total += 1;
            skel_hit += u64::from(p);
        }
    }
    f_score(ratio(tp, tp + fp), ratio(skel_hit, skel_total))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrdResult {
    pub drd: f64,
    pub nubn: usize,
    /// Ground truth had no non-uniform block but the prediction differs; NUBN taken as 1.
    pub degenerate: bool,
}

pub fn drd_detailed(pred: &BinaryMask, gt: &BinaryMask) -> Result<DrdResult> {
    check_dims(pred, gt)?;
    let sum = drd_sum(pred, gt);
    let blocks = nubn(gt);
    if blocks > 0 {
        return Ok(DrdResult {
            drd: sum / blocks as f64,
            nubn: blocks,
            degenerate: false,
        });
    }
    let degenerate = pred != gt;
    if degenerate {
        warn!("ground truth is uniform; DRD normalised by 1 instead of NUBN");
    }
    Ok(DrdResult {
        drd: sum,
        nubn: 0,
        degenerate,
    })
}

pub fn drd(pred: &BinaryMask, gt: &BinaryMask) -> Result<f64> {
    Ok(drd_detailed(pred, gt)?.drd)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub psnr: f64,
    pub fm: f64,
    pub fps: f64,
    pub drd: f64,
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    #[serde(default)]
    pub drd_degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub psnr_cap: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            psnr_cap: DEFAULT_PSNR_CAP,
        }
    }
}

pub fn evaluate_pair_with(pred: &BinaryMask, gt: &BinaryMask, opts: &EvalOptions) -> Result<EvalReport> {
    check_dims(pred, gt)?;
    let c = confusion(pred, gt)?;
    let d = drd_detailed(pred, gt)?;
    Ok(EvalReport {
        psnr: psnr_capped(pred, gt, opts.psnr_cap)?,
        fm: f_score(c.precision(), c.recall()),
        fps: pseudo_f_measure(pred, gt)?,
        drd: d.drd,
        tp: c.tp,
        fp: c.fp,
        fn_: c.fn_,
        tn: c.tn,
        drd_degenerate: d.degenerate,
    })
}

pub fn evaluate_pair(pred: &BinaryMask, gt: &BinaryMask) -> Result<EvalReport> {
    evaluate_pair_with(pred, gt, &EvalOptions::default())
}

/// Arithmetic mean of per-image metrics (counts are summed), in the given order.
pub fn mean_report(reports: &[EvalReport]) -> Result<EvalReport> {
    if reports.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = reports.len() as f64;
    let mean = |f: fn(&EvalReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    Ok(EvalReport {
        psnr: mean(|r| r.psnr),
        fm: mean(|r| r.fm),
        fps: mean(|r| r.fps),
        drd: mean(|r| r.drd),
        tp: reports.iter().map(|r| r.tp).sum(),
        fp: reports.iter().map(|r| r.fp).sum(),
        fn_: reports.iter().map(|r| r.fn_).sum(),
        tn: reports.iter().map(|r| r.tn).sum(),
        drd_degenerate: reports.iter().any(|r| r.drd_degenerate),
    })
}

pub fn evaluate_set(pairs: &[(BinaryMask, BinaryMask)]) -> Result<EvalReport> {
    let reports = pairs
        .iter()
        .map(|(p, g)| evaluate_pair(p, g))
        .collect::<Result<Vec<_>>>()?;
    mean_report(&reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgcore::Rect;

    fn blob(w: usize, h: usize, rects: &[Rect]) -> BinaryMask {
        let mut m = BinaryMask::filled(w, h, false).unwrap();
        for &r in rects {
            m.fill_rect(r, true);
        }
        m
    }

    #[test]
    fn confusion_extremes() {
        let gt = blob(10, 10, &[Rect::new(2, 2, 4, 3)]);
        let same = confusion(&gt, &gt).unwrap();
        assert_eq!((same.fp, same.fn_), (0, 0));
        let inv = confusion(&gt.complement(), &gt).unwrap();
        assert_eq!((inv.tp, inv.tn), (0, 0));
        assert_eq!(inv.total(), 100);
    }

    #[test]
    fn dims_checked() {
        let a = BinaryMask::filled(3, 3, false).unwrap();
        let b = BinaryMask::filled(3, 4, false).unwrap();
        assert!(matches!(f_measure(&a, &b), Err(Error::DimMismatch { .. })));
        assert!(drd(&a, &b).is_err());
    }

    #[test]
    fn f_measure_closed_forms() {
        let gt = blob(10, 10, &[Rect::new(1, 1, 3, 3)]);
        assert_eq!(f_measure(&gt, &gt).unwrap(), 100.0);
        let disjoint = blob(10, 10, &[Rect::new(6, 6, 2, 2)]);
        assert_eq!(f_measure(&disjoint, &gt).unwrap(), 0.0);

        // tp = 1, fp = 1, fn = 0: P = 0.5, R = 1
        let mut g = BinaryMask::filled(4, 1, false).unwrap();
        g.set(0, 0, true);
        let mut p = g.clone();
        p.set(1, 0, true);
        assert!((f_measure(&p, &g).unwrap() - 200.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn psnr_closed_forms() {
        let gt = blob(10, 10, &[Rect::new(1, 1, 3, 3)]);
        assert_eq!(psnr(&gt, &gt).unwrap(), 100.0);
        let mut p = gt.clone();
        p.set(9, 9, true);
        assert!((psnr(&p, &gt).unwrap() - 20.0).abs() < 1e-12);
        assert_eq!(psnr_capped(&gt, &gt, 60.0).unwrap(), 60.0);
    }

    #[test]
    fn pseudo_f_cases() {
        let gt = blob(40, 30, &[Rect::new(5, 5, 20, 6), Rect::new(10, 15, 5, 12)]);
        assert_eq!(pseudo_f_measure(&gt, &gt).unwrap(), 100.0);
        let empty = BinaryMask::filled(40, 30, false).unwrap();
        assert_eq!(pseudo_f_measure(&empty, &gt).unwrap(), 0.0);
        let skel = skeletonize(&gt);
        assert_eq!(pseudo_f_measure(&skel, &gt).unwrap(), 100.0);
        assert!(f_measure(&skel, &gt).unwrap() < 100.0);
    }

    #[test]
    fn pseudo_fm_is_asymmetric() {
        let gt = blob(10, 10, &[Rect::new(0, 0, 4, 4)]);
        let pred = blob(10, 10, &[Rect::new(0, 0, 4, 4), Rect::new(6, 6, 2, 2)]);
        // swapping arguments swaps precision and recall, which leaves the harmonic mean unchanged
        assert_eq!(f_measure(&pred, &gt).unwrap(), f_measure(&gt, &pred).unwrap());
        assert_ne!(pseudo_f_measure(&pred, &gt).unwrap(), pseudo_f_measure(&gt, &pred).unwrap());
        let c1 = confusion(&pred, &gt).unwrap();
        let c2 = confusion(&gt, &pred).unwrap();
        assert_eq!((c1.precision(), c1.recall()), (c2.recall(), c2.precision()));
    }

    #[test]
    fn drd_single_flip_in_uniform_gt() {
        let gt = BinaryMask::filled(16, 16, false).unwrap();
        let mut pred = gt.clone();
        pred.set(8, 8, true);
        let sum = drd_sum(&pred, &gt);
        assert!((sum - 1.0).abs() < 1e-15);
        // uniform gt: no non-uniform block, prediction differs -> degenerate, NUBN = 1
        let d = drd_detailed(&pred, &gt).unwrap();
        assert!(d.degenerate);
        assert!((d.drd - 1.0).abs() < 1e-15);
        assert_eq!(drd(&gt, &gt).unwrap(), 0.0);
    }

    #[test]
    fn drd_flip_normalised_by_nubn() {
        let mut gt = BinaryMask::filled(24, 24, false).unwrap();
        gt.set(0, 0, true);
        gt.set(23, 23, true);
        let mut pred = gt.clone();
        pred.set(12, 12, true);
        let d = drd_detailed(&pred, &gt).unwrap();
        assert_eq!(d.nubn, 2);
        assert!((d.drd - 0.5).abs() < 1e-15);
    }

    #[test]
    fn set_mean_and_permutation() {
        let gt = blob(10, 10, &[Rect::new(1, 1, 3, 3)]);
        let mut p1 = gt.clone();
        p1.set(9, 9, true);
        let pairs = vec![(gt.clone(), gt.clone()), (p1.clone(), gt.clone())];
        let m = evaluate_set(&pairs).unwrap();
        let a = evaluate_pair(&gt, &gt).unwrap();
        let b = evaluate_pair(&p1, &gt).unwrap();
        assert_eq!(m.psnr, (a.psnr + b.psnr) / 2.0);
        assert_eq!(m.fm, (a.fm + b.fm) / 2.0);
        let rev: Vec<_> = pairs.iter().rev().cloned().collect();
        assert_eq!(evaluate_set(&rev).unwrap(), m);
        assert_eq!(evaluate_set(&pairs[..1]).unwrap(), a);
        assert!(matches!(evaluate_set(&[]), Err(Error::EmptySet)));
    }
}
