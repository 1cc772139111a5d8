//! Runs the coarse multi-scale pass and the character-scaled refinement pass, reporting each stage.
//!
//! With no model argument the ground-truth oracle stands in for a trained network.
//!
//! cargo run --release --example self_refining_inference [-- model.onnx]

use glyphpatch::backends::{ModelBinarizer, OracleBinarizer, PatchBinarizer};
use glyphpatch::inference::{binarize_traced, InferenceConfig};
use glyphpatch::metrics::evaluate_pair;
use glyphpatch::patching::DilationConfig;
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let page = generate(&SynthConfig {
        width: 640,
        height: 400,
        lines: 6,
        chars_per_line: 18,
        char_height: 24,
        seed: 5,
        ..SynthConfig::default()
    })?;
    let backend: Box<dyn PatchBinarizer> = match std::env::args().nth(1) {
        Some(path) => Box::new(ModelBinarizer::load(path)?),
        None => Box::new(OracleBinarizer::new(page.mask.clone())),
    };
    let cfg = InferenceConfig::default();
    let trace = binarize_traced(&page.image, backend.as_ref(), &cfg, &DilationConfig::default())?;

    for (scale, map) in cfg.scales.iter().zip(&trace.coarse.per_scale) {
        let r = evaluate_pair(&map.threshold(cfg.threshold as f32), &page.mask)?;
        println!("scale {scale:>4}: FM {:.2}", r.fm);
    }
    let coarse = evaluate_pair(&trace.coarse.pseudo, &page.mask)?;
    println!("fused pseudo mask: FM {:.2}, DRD {:.3}", coarse.fm, coarse.drd);

    if let Some(h) = trace.refined.mean_iqr_height {
        println!(
            "refinement: mean height {h:.2}px, {} tiles of side {}",
            trace.refined.tiles.len(),
            trace.refined.tiles.first().map_or(0, |t| t.width)
        );
    }
    let fin = evaluate_pair(trace.final_mask(), &page.mask)?;
    println!("final: PSNR {:.2}, FM {:.2}, Fps {:.2}, DRD {:.3}", fin.psnr, fin.fm, fin.fps, fin.drd);
    Ok(())
}
