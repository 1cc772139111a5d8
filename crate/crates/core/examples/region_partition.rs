//! Splits an inscription into text-context foreground and background by dilating character boxes.
//!
//! cargo run --example region_partition -- [out_dir]

use std::path::PathBuf;

use glyphpatch::imgcore::{connected_components, save_gray, save_mask, save_overlay};
use glyphpatch::patching::{height_stats, partition_regions, DilationConfig};
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/region_partition".into()));
    std::fs::create_dir_all(&out).map_err(|e| glyphpatch::Error::io(&out, e))?;

    let page = generate(&SynthConfig {
        width: 400,
        height: 300,
        lines: 3,
        chars_per_line: 10,
        seed: 3,
        ..SynthConfig::default()
    })?;
    let components = connected_components(&page.mask);
    let stats = height_stats(&components)?;

    for (name, cfg) in [
        ("tight", DilationConfig { s1: 0.1, s2: 0.3 }),
        ("default", DilationConfig::default()),
        ("loose", DilationConfig { s1: 0.8, s2: 2.0 }),
    ] {
        let part = partition_regions(&components, &stats, &cfg, page.mask.dims())?;
        println!(
            "{name:>8}: s1={} s2={} foreground {:.1}% of the image",
            cfg.s1,
            cfg.s2,
            100.0 * part.area_fg as f64 / part.area_total as f64
        );
        save_mask(&part.foreground, out.join(format!("foreground_{name}.png")))?;
        save_overlay(&page.image, &part.foreground, out.join(format!("overlay_{name}.png")))?;
    }
    save_gray(&page.image, out.join("image.png"))?;
    println!("written to {}", out.display());
    Ok(())
}
