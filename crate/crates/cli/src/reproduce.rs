use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use robustnet::claims::DEFAULT_SEED;
use robustnet::io::write_atomic;
use robustnet::manifest::{run_manifest, ExperimentManifest, ItemStatus};

use crate::Exit;

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Manifest file, or `paper-claims` for the built-in acceptance suite.
    pub manifest: String,
    /// Overrides the manifest's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the manifest's output directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

pub fn run(args: &ReproduceArgs) -> Result<()> {
    let (mut manifest, base) = if args.manifest == "paper-claims" {
        (ExperimentManifest::paper_claims(DEFAULT_SEED), PathBuf::from("."))
    } else {
        let path = Path::new(&args.manifest);
        let m = ExperimentManifest::load(path).with_context(|| format!("loading manifest {}", path.display()))?;
        (m, path.parent().map(Path::to_path_buf).unwrap_or_default())
    };
    if let Some(seed) = args.seed {
        manifest.seed = seed;
    }
    if let Some(dir) = &args.out_dir {
        // relative to the working directory, not the manifest
        manifest.output_dir = Some(std::env::current_dir()?.join(dir));
    }
    println!("seed {}", manifest.seed);
    let report = run_manifest(&manifest, &base);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for item in &report.items {
        let tag = match item.status {
            ItemStatus::Pass => "PASS",
            ItemStatus::Fail => "FAIL",
            ItemStatus::Error => "ERROR",
        };
        println!("[{tag}] {}: {}", item.name, item.detail);
    }
    println!(
        "{} passed, {} failed, {} errors",
        report.count(ItemStatus::Pass),
        report.count(ItemStatus::Fail),
        report.count(ItemStatus::Error)
    );
    if let Some(dir) = &manifest.output_dir {
        let body = serde_json::to_string_pretty(&report)? + "\n";
        write_atomic(&base.join(dir).join("summary.json"), body.as_bytes())?;
    }
    match report.exit_code() {
        0 => Ok(()),
        code => Err(Exit(code).into()),
    }
}
