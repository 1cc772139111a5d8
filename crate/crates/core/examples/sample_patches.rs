//! Samples character-scaled patches from one labelled image and writes them in the training layout.
//!
//! cargo run --example sample_patches -- [out_dir] [seed]

use std::path::PathBuf;

use glyphpatch::patching::{
    extract_batch, plan_patches, read_patch_manifest, write_patch_dir, DilationConfig, ExportContext, Region,
    SamplingConfig,
};
use glyphpatch::synth::{generate, SynthConfig};

fn main() -> glyphpatch::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/sample_patches".into()));
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let page = generate(&SynthConfig {
        width: 480,
        height: 320,
        lines: 5,
        chars_per_line: 14,
        char_height: 18,
        seed,
        ..SynthConfig::default()
    })?;
    let dilation = DilationConfig::default();
    // small output side keeps the example quick; training uses 512
    let sampling = SamplingConfig {
        out_side: 128,
        rng_seed: seed,
        ..SamplingConfig::default()
    };
    let plan = plan_patches(&page.mask, &dilation, &sampling)?;
    let fg = plan.specs.iter().filter(|s| s.region == Region::Foreground).count();
    println!(
        "{} components ({} valid), mean height {:.2}px -> {fg} foreground, {} background patches",
        plan.components.len(),
        plan.n_valid,
        plan.stats.mean_iqr_height,
        plan.specs.len() - fg
    );
    let sides: Vec<usize> = plan.specs.iter().map(|s| s.side).collect();
    println!(
        "patch sides {}..{}px",
        sides.iter().min().unwrap_or(&0),
        sides.iter().max().unwrap_or(&0)
    );

    let batch = extract_batch(&page.image, Some(&page.mask), plan.specs, sampling.out_side)?;
    let ctx = ExportContext {
        image_id: "synthetic",
        dims: page.image.dims(),
        mean_iqr_height: plan.stats.mean_iqr_height,
        n_components: plan.components.len(),
        n_valid: plan.n_valid,
        dilation: &dilation,
        sampling: &sampling,
    };
    let dir = write_patch_dir(&out, &ctx, &batch)?;
    let manifest = read_patch_manifest(&dir)?;
    println!("{} patches written to {}", manifest.patches.len(), dir.display());
    Ok(())
}
