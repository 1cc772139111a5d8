//! Whole-image Otsu and Sauvola against the same methods run through the two-stage patch pipeline.
//!
//! cargo run --release --example classical_baselines

use glyphpatch::backends::{otsu_binarize, otsu_threshold, sauvola_binarize, OtsuBinarizer, Polarity, SauvolaBinarizer, SauvolaParams};
use glyphpatch::inference::{binarize, InferenceConfig};
use glyphpatch::metrics::evaluate_pair;
use glyphpatch::patching::DilationConfig;
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let page = generate(&SynthConfig {
        width: 512,
        height: 384,
        texture: 55.0,
        grain: 14.0,
        lines: 6,
        chars_per_line: 16,
        seed: 21,
        ..SynthConfig::default()
    })?;
    println!("global Otsu threshold: {}", otsu_threshold(&page.image));

    let params = SauvolaParams::default();
    let whole = [
        ("otsu", otsu_binarize(&page.image, Polarity::DarkText).threshold(0.5)),
        ("sauvola", sauvola_binarize(&page.image, &params, Polarity::DarkText)?.threshold(0.5)),
    ];
    let cfg = InferenceConfig {
        scales: vec![64, 128, 256],
        ..InferenceConfig::default()
    };
    let dilation = DilationConfig::default();
    let patched = [
        ("otsu", binarize(&page.image, &OtsuBinarizer::default(), &cfg, &dilation)?),
        (
            "sauvola",
            binarize(&page.image, &SauvolaBinarizer { params, polarity: Polarity::DarkText }, &cfg, &dilation)?,
        ),
    ];

    println!("{:<28} {:>8} {:>8} {:>8} {:>8}", "method", "PSNR", "FM", "Fps", "DRD");
    for (label, (name, mask)) in [("whole image", &whole), ("two-stage patches", &patched)]
        .into_iter()
        .flat_map(|(l, set)| set.iter().map(move |m| (l, m)))
    {
        let r = evaluate_pair(mask, &page.mask)?;
        println!("{:<28} {:>8.2} {:>8.2} {:>8.2} {:>8.2}", format!("{name} ({label})"), r.psnr, r.fm, r.fps, r.drd);
    }
    Ok(())
}
