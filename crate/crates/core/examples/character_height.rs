//! Estimates the mean character height of a labelled inscription and derives the dilation kernels.
//!
//! cargo run --example character_height [-- mask.png]

use glyphpatch::imgcore::{connected_components, load_mask};
use glyphpatch::patching::{height_stats, DilationConfig};
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let mask = match std::env::args().nth(1) {
        Some(path) => load_mask(path)?,
        None => generate(&SynthConfig::default())?.mask,
    };
    let components = connected_components(&mask);
    let stats = height_stats(&components)?;
    println!("{} components", components.len());
    println!("height quartiles q1 {:.1}, q3 {:.1} (iqr {:.1})", stats.q1, stats.q3, stats.iqr);
    println!("mean height inside the band: {:.2}px", stats.mean_iqr_height);

    let (k1, k2) = DilationConfig::default().kernels(stats.mean_iqr_height);
    println!("dilation kernels: {}x{} then {}x{}", k1.kernel_w(), k1.kernel_h(), k2.kernel_w(), k2.kernel_h());
    Ok(())
}
