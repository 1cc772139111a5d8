//! Loads an ONNX patch model (input `input`, output `prob`, 1x1x512x512) and binarizes an inscription with it.
//!
//! cargo run --release --example model_backend -- [model.onnx] [out.png]

use std::path::PathBuf;

use glyphpatch::backends::{ModelBinarizer, Patch, PatchBinarizer};
use glyphpatch::imgcore::{resize_gray, save_mask, Rect};
use glyphpatch::inference::{binarize, InferenceConfig};
use glyphpatch::metrics::evaluate_pair;
use glyphpatch::patching::DilationConfig;
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let mut args = std::env::args().skip(1);
    let model_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/models/dark_text.onnx"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/model_backend.png".into()));

    let model = ModelBinarizer::load(&model_path)?;
    println!("loaded {} ({})", model_path.display(), model.name());

    let page = generate(&SynthConfig {
        width: 600,
        height: 360,
        seed: 9,
        ..SynthConfig::default()
    })?;
    let side = model.input_side().unwrap_or(512);
    let probe = resize_gray(&page.image.crop(Rect::square(0, 0, 256))?, side, side);
    let p = model.predict(Patch {
        image: &probe,
        origin: Rect::square(0, 0, 256),
    })?;
    let mean = p.data().iter().map(|&v| v as f64).sum::<f64>() / p.len() as f64;
    println!("single patch: mean probability {mean:.3}");

    let cfg = InferenceConfig {
        scales: vec![256, 512],
        ..InferenceConfig::default()
    };
    let mask = binarize(&page.image, &model, &cfg, &DilationConfig::default())?;
    let r = evaluate_pair(&mask, &page.mask)?;
    println!("full image: FM {:.2}, DRD {:.3}", r.fm, r.drd);
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| glyphpatch::Error::io(dir, e))?;
    }
    save_mask(&mask, &out)?;
    println!("mask written to {}", out.display());
    Ok(())
}
