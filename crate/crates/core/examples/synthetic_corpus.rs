//! Writes a small synthetic corpus with a manifest, splits it and prints corpus statistics.
//!
//! cargo run --example synthetic_corpus -- /tmp/corpus 12

use std::path::PathBuf;

use glyphpatch::dataset::{compute_stats, split, Manifest, ManifestEntry, SplitRole};
use glyphpatch::imgcore::{save_gray, save_mask};
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let mut args = std::env::args().skip(1);
    let root = PathBuf::from(args.next().unwrap_or_else(|| "target/synthetic_corpus".into()));
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    std::fs::create_dir_all(root.join("images")).map_err(|e| glyphpatch::Error::io(&root, e))?;
    std::fs::create_dir_all(root.join("masks")).map_err(|e| glyphpatch::Error::io(&root, e))?;

    let mut entries = Vec::new();
    for i in 0..n {
        let worn = i % 3 == 0;
        let cfg = SynthConfig {
            width: 240 + 40 * (i % 4),
            height: 160 + 20 * (i % 3),
            char_height: 14 + 2 * (i % 5),
            lines: 3,
            chars_per_line: 6,
            texture: if worn { 40.0 } else { 20.0 },
            seed: i as u64,
            ..SynthConfig::default()
        };
        let page = generate(&cfg)?;
        let id = format!("stele_{i:02}");
        save_gray(&page.image, root.join(format!("images/{id}.png")))?;
        save_mask(&page.mask, root.join(format!("masks/{id}.png")))?;
        entries.push(ManifestEntry {
            image_id: id.clone(),
            image: format!("images/{id}.png").into(),
            mask: Some(format!("masks/{id}.png").into()),
            tags: vec![if worn { "worn" } else { "clean" }.into()],
        });
    }

    let manifest = split(&Manifest::new(entries, &root)?, 0.85, 7)?;
    manifest.save(root.join("manifest.json"))?;
    let train = manifest.entries_for(SplitRole::Train).len();
    println!("{n} images written to {}, {train} train / {} test", root.display(), n - train);

    let stats = compute_stats(&Manifest::load(root.join("manifest.json"))?)?;
    println!("components per image {}..{}", stats.components.min, stats.components.max);
    println!("width {}..{}, height {}..{}", stats.width.min, stats.width.max, stats.height.min, stats.height.max);
    println!("aspect {:.2}..{:.2}", stats.aspect.min, stats.aspect.max);
    Ok(())
}
