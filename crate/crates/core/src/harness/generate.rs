use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_json, write_json};
use crate::error::{Error, Result};
use crate::synth::{generate_benchmark, sample_id, GeneratorConfig};

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST: &str = "manifest.json";

/// `manifest.json` of a benchmark directory, written once every sample is on
/// disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub seed: u64,
    pub n: usize,
    pub samples: Vec<String>,
    pub config: GeneratorConfig,
}

pub fn load_manifest(bench: &Path) -> Result<Manifest> {
    let path = bench.join(MANIFEST);
    if !path.is_file() {
        return Err(Error::Harness(format!(
            "{} is not a complete benchmark (no {MANIFEST})",
            bench.display()
        )));
    }
    let m: Manifest = read_json(&path)?;
    if m.format_version != FORMAT_VERSION {
        return Err(Error::Parse {
            path,
            message: format!("format version {} (expected {FORMAT_VERSION})", m.format_version),
        });
    }
    Ok(m)
}

/// Generate `n` samples into `out`. An existing non-empty directory is only
/// overwritten with `force`, in which case previous samples and the manifest
/// are removed first.
pub fn cmd_generate(cfg: &GeneratorConfig, n: usize, seed: u64, out: &Path, force: bool) -> Result<Manifest> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::config("n", "must be at least 1"));
    }
    if out.exists() {
        let mut entries = std::fs::read_dir(out)?.peekable();
        if entries.peek().is_some() {
            if !force {
                let what = if out.join(MANIFEST).exists() {
                    "an existing benchmark"
                } else {
                    "a partial or foreign directory"
                };
                return Err(Error::Harness(format!(
                    "{} holds {what}; pass --force to replace it",
                    out.display()
                )));
            }
            let _ = std::fs::remove_file(out.join(MANIFEST));
            for e in std::fs::read_dir(out)? {
                let e = e?;
                if e.file_name().to_string_lossy().starts_with("sample_") && e.path().is_dir() {
                    std::fs::remove_dir_all(e.path())?;
                }
            }
        }
    }
    std::fs::create_dir_all(out)?;
    let samples = generate_benchmark(cfg, n, seed)?;
    for s in &samples {
        s.write_to(&out.join(s.id()))?;
    }
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        seed,
        n,
        samples: (0..n).map(sample_id).collect(),
        config: cfg.clone(),
    };
    write_json(&out.join(MANIFEST), &manifest)?;
    log::info!("wrote {n} samples to {}", out.display());
    Ok(manifest)
}
