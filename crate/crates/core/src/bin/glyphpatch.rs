use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use glyphpatch::backends::{otsu_binarize, sauvola_binarize, Polarity};
use glyphpatch::config::{BackendChoice, RunConfig, MODEL_ENV};
use glyphpatch::dataset::{compute_stats, export_patches, split, Manifest};
use glyphpatch::imgcore::{load_gray, load_mask, save_gray, save_mask, save_overlay};
use glyphpatch::inference::binarize_traced;
use glyphpatch::metrics::{evaluate_dirs, write_eval_csv, EvalSummary};
use glyphpatch::{Error, Result};

/// Character-context-aware patching and self-refining binarization.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-stage binarization of one image.
    Binarize(BinarizeArgs),
    /// Score a directory of predicted masks against same-stem ground truth.
    Evaluate(EvaluateArgs),
    /// Sample training patches for every train entry of a manifest.
    ExportPatches(ExportArgs),
    /// Component counts and dimensions per image, with corpus ranges.
    Stats(StatsArgs),
    /// Seeded, tag-stratified train/test split of a manifest.
    Split(SplitArgs),
    /// Whole-image classical binarization without patching.
    Baseline(BaselineArgs),
}

/// Overrides for the JSON config file; unset flags keep the file or built-in value.
#[derive(Args, Default)]
struct Overrides {
    /// JSON run configuration; precedence is flag > file > default.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Text polarity: dark or light [default: dark].
    #[arg(long)]
    polarity: Option<Polarity>,
    /// First dilation kernel height factor (times mean character height) [default: 0.3].
    #[arg(long)]
    s1: Option<f64>,
    /// First dilation kernel width factor [default: 0.9].
    #[arg(long)]
    s2: Option<f64>,
    /// Stage-1 window sides, comma separated [default: 256,384,512,768].
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<usize>>,
    /// Stage-1 stride as a fraction of the window side [default: 0.5].
    #[arg(long)]
    stride_fraction: Option<f64>,
    /// Probability cut [default: 0.5].
    #[arg(long)]
    threshold: Option<f64>,
    /// Stage-2 window side in character heights [default: 8].
    #[arg(long)]
    refine_k: Option<f64>,
    /// Stage-2 window overlap [default: 0.5].
    #[arg(long)]
    refine_overlap: Option<f64>,
    /// Sauvola window side, odd [default: 25].
    #[arg(long)]
    sauvola_window: Option<usize>,
    /// Sauvola sensitivity k [default: 0.2].
    #[arg(long)]
    sauvola_k: Option<f64>,
    /// Sauvola dynamic range R [default: 128].
    #[arg(long)]
    sauvola_r: Option<f64>,
    /// Foreground patches per valid component [default: 0.5].
    #[arg(long)]
    r_base: Option<f64>,
    /// Minimum foreground patches per image [default: 10].
    #[arg(long)]
    n_min: Option<usize>,
    /// Maximum foreground patches per image [default: 250].
    #[arg(long)]
    n_max: Option<usize>,
    /// Background patches for an all-background image [default: 75].
    #[arg(long)]
    n_bg_max: Option<usize>,
    /// Smallest patch side in character heights [default: 4].
    #[arg(long)]
    k_min: Option<f64>,
    /// Largest patch side in character heights [default: 12].
    #[arg(long)]
    k_max: Option<f64>,
    /// Side of exported patches [default: 512].
    #[arg(long)]
    out_side: Option<usize>,
    /// Global sampling seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,
}

impl Overrides {
    fn resolve(&self) -> Result<RunConfig> {
        let mut c = RunConfig::load_or_default(self.config.as_deref())?;
        macro_rules! set {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { c.$($field).+ = v; })*
            };
        }
        set!(
            polarity => polarity,
            s1 => dilation.s1,
            s2 => dilation.s2,
            scales => inference.scales,
            stride_fraction => inference.stride_fraction,
            threshold => inference.threshold,
            refine_k => inference.refine_k,
            refine_overlap => inference.refine_overlap,
            sauvola_window => sauvola.window,
            sauvola_k => sauvola.k,
            sauvola_r => sauvola.r,
            r_base => sampling.r_base,
            n_min => sampling.n_min,
            n_max => sampling.n_max,
            n_bg_max => sampling.n_bg_max,
            k_min => sampling.k_min,
            k_max => sampling.k_max,
            out_side => sampling.out_side,
            seed => sampling.rng_seed,
        );
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct BinarizeArgs {
    input: PathBuf,
    /// Output mask PNG (text = 255).
    #[arg(short, long)]
    output: PathBuf,
    /// otsu, sauvola, oracle, model or model:<path> [default: model].
    #[arg(long)]
    backend: Option<BackendChoice>,
    /// ONNX model for the model backend.
    #[arg(long, env = MODEL_ENV)]
    model: Option<PathBuf>,
    /// Ground-truth mask, required by the oracle backend.
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Also write the input with predicted text tinted red.
    #[arg(long)]
    overlay: Option<PathBuf>,
    /// Directory for coarse.png, pseudo.png and final.png.
    #[arg(long)]
    debug: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct EvaluateArgs {
    pred_dir: PathBuf,
    gt_dir: PathBuf,
    /// Per-image CSV (stdout when omitted).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON summary with means.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    manifest: PathBuf,
    #[arg(short, long)]
    out: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct StatsArgs {
    manifest: PathBuf,
    /// Write the full statistics as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SplitArgs {
    manifest: PathBuf,
    /// Fraction of entries assigned to train.
    #[arg(long, default_value_t = 0.85)]
    train_fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output manifest (default: overwrite the input).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BaselineArgs {
    /// otsu or sauvola.
    method: String,
    input: PathBuf,
    output: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

fn run_binarize(a: &BinarizeArgs) -> Result<()> {
    let mut cfg = a.overrides.resolve()?;
    if let Some(b) = &a.backend {
        cfg.backend = b.clone();
    }
    if let (BackendChoice::Model(None), Some(m)) = (&cfg.backend, &a.model) {
        cfg.backend = BackendChoice::Model(Some(m.clone()));
    }
    let img = load_gray(&a.input)?;
    let gt = a.gt.as_ref().map(load_mask).transpose()?;
    let backend = cfg.build_backend(gt)?;
    info!("binarizing {} with {}", a.input.display(), backend.name());
    let trace = binarize_traced(&img, backend.as_ref(), &cfg.inference, &cfg.dilation)?;
    save_mask(trace.final_mask(), &a.output)?;
    if let Some(p) = &a.overlay {
        save_overlay(&img, trace.final_mask(), p)?;
    }
    if let Some(dir) = &a.debug {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        save_gray(&trace.coarse.coarse.to_gray(), dir.join("coarse.png"))?;
        save_mask(&trace.coarse.pseudo, dir.join("pseudo.png"))?;
        save_mask(trace.final_mask(), dir.join("final.png"))?;
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn json_bytes<T: serde::Serialize>(v: &T, path: &Path) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::json(path, e))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn run_evaluate(a: &EvaluateArgs) -> Result<()> {
    let rows = evaluate_dirs(&a.pred_dir, &a.gt_dir)?;
    let mut csv = Vec::new();
    write_eval_csv(&rows, &mut csv)?;
    match &a.csv {
        Some(p) => write_file(p, &csv)?,
        None => print!("{}", String::from_utf8_lossy(&csv)),
    }
    let summary = EvalSummary::from_rows(&rows)?;
    match &a.summary {
        Some(p) => write_file(p, &json_bytes(&summary, p)?)?,
        None => eprintln!(
            "mean over {} images: psnr {:.4} fm {:.4} fps {:.4} drd {:.4}",
            summary.images, summary.mean.psnr, summary.mean.fm, summary.mean.fps, summary.mean.drd
        ),
    }
    Ok(())
}

fn run_export(a: &ExportArgs) -> Result<()> {
    let cfg = a.overrides.resolve()?;
    let manifest = Manifest::load(&a.manifest)?;
    let summary = export_patches(&manifest, &cfg.sampling, &cfg.dilation, &a.out)?;
    let path = a.out.join("export_summary.json");
    write_file(&path, &json_bytes(&summary, &path)?)?;
    println!(
        "{} images, {} patches, {} skipped",
        summary.images.len(),
        summary.total_patches(),
        summary.skipped().count()
    );
    Ok(())
}

fn run_stats(a: &StatsArgs) -> Result<()> {
    let stats = compute_stats(&Manifest::load(&a.manifest)?)?;
    println!("image_id,components,width,height,aspect");
    for s in &stats.images {
        println!("{},{},{},{},{:.4}", s.image_id, s.components, s.width, s.height, s.aspect);
    }
    println!("# components {}..{}", stats.components.min, stats.components.max);
    println!("# width {}..{}", stats.width.min, stats.width.max);
    println!("# height {}..{}", stats.height.min, stats.height.max);
    println!("# aspect {:.2}..{:.2}", stats.aspect.min, stats.aspect.max);
    if let Some(p) = &a.json {
        write_file(p, &json_bytes(&stats, p)?)?;
    }
    Ok(())
}

fn run_split(a: &SplitArgs) -> Result<()> {
    let manifest = Manifest::load(&a.manifest)?;
    let mut out = split(&manifest, a.train_fraction, a.seed)?;
    let target = a.out.clone().unwrap_or_else(|| a.manifest.clone());
    let absolute = |p: &Path| {
        let p = if p.as_os_str().is_empty() { Path::new(".") } else { p };
        p.canonicalize().map_err(|e| Error::io(p, e))
    };
    let source_dir = absolute(manifest.base_dir())?;
    let target_dir = absolute(target.parent().unwrap_or(Path::new("")))?;
    if target_dir != source_dir {
        // keep entries resolvable from the new location
        for e in &mut out.entries {
            e.image = source_dir.join(&e.image);
            e.mask = e.mask.as_ref().map(|m| source_dir.join(m));
        }
        out.set_base_dir(target_dir);
    }
    out.save(&target)?;
    let train = out.split.values().filter(|r| **r == glyphpatch::dataset::SplitRole::Train).count();
    println!("{train} train, {} test", out.split.len() - train);
    Ok(())
}

fn run_baseline(a: &BaselineArgs) -> Result<()> {
    let cfg = a.overrides.resolve()?;
    let img = load_gray(&a.input)?;
    let prob = match a.method.as_str() {
        "otsu" => otsu_binarize(&img, cfg.polarity),
        "sauvola" => sauvola_binarize(&img, &cfg.sauvola, cfg.polarity)?,
        other => return Err(Error::UnknownMethod(other.to_string())),
    };
    save_mask(&prob.threshold(cfg.inference.threshold as f32), &a.output)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Binarize(a) => run_binarize(a),
        Command::Evaluate(a) => run_evaluate(a),
        Command::ExportPatches(a) => run_export(a),
        Command::Stats(a) => run_stats(a),
        Command::Split(a) => run_split(a),
        Command::Baseline(a) => run_baseline(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        pool = pool.num_threads(n.max(1));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(Error::InvalidParam(format!("thread pool: {e}"))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
