//! Shows how PSNR, FM, pseudo-FM and DRD react to different kinds of damage to a prediction.
//!
//! cargo run --example evaluate_metrics

use glyphpatch::imgcore::{dilate, BinaryMask, StructuringElement};
use glyphpatch::metrics::{evaluate_pair, skeletonize};
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let gt = generate(&SynthConfig::default())?.mask;
    let (w, h) = gt.dims();

    let thick = dilate(&gt, StructuringElement::new(3, 3)?);
    let skeleton = skeletonize(&gt);
    let speckled = BinaryMask::from_fn(w, h, |x, y| gt.get(x, y) ^ ((x * 7 + y * 13) % 97 == 0))?;
    let shifted = BinaryMask::from_fn(w, h, |x, y| x >= 2 && gt.get(x - 2, y))?;
    let empty = BinaryMask::filled(w, h, false)?;

    println!("{:<12} {:>8} {:>8} {:>8} {:>8}", "prediction", "PSNR", "FM", "Fps", "DRD");
    for (name, pred) in [
        ("exact", &gt),
        ("thickened", &thick),
        ("skeleton", &skeleton),
        ("speckled", &speckled),
        ("shifted", &shifted),
        ("empty", &empty),
    ] {
        let r = evaluate_pair(pred, &gt)?;
        println!("{name:<12} {:>8.2} {:>8.2} {:>8.2} {:>8.3}", r.psnr, r.fm, r.fps, r.drd);
    }
    Ok(())
}
