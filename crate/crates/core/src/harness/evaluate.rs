use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{RunManifest, SampleStatus, RUN_MANIFEST, STATUS};
use super::{read_json, write_json};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::metrics::{compare, PersistenceDiagram, WassersteinTerms};
use crate::synth::{Difficulty, SampleMeta};

pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const RESULTS: &str = "results.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagrams {
    pub recovered: PersistenceDiagram,
    pub reference: PersistenceDiagram,
}

/// `results.json` for one (sample, method) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    pub sample_id: String,
    pub method: String,
    pub tower_level: Option<usize>,
    pub scored: bool,
    pub error: Option<String>,
    pub wasserstein_similarity: Option<f64>,
    pub ged: Option<f64>,
    pub distance: Option<WassersteinTerms>,
    pub diagram: Option<Diagrams>,
    pub difficulty: Difficulty,
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodAggregate {
    pub method: String,
    pub wasserstein_similarity: Option<f64>,
    pub ged: Option<f64>,
    pub scored: usize,
    pub excluded: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub methods: Vec<MethodAggregate>,
}

impl EvalSummary {
    pub fn method(&self, name: &str) -> Option<&MethodAggregate> {
        self.methods.iter().find(|m| m.method == name)
    }

    pub fn excluded(&self) -> usize {
        self.methods.iter().map(|m| m.excluded).sum()
    }

    /// One row per metric, one column per method.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("metric");
        for m in &self.methods {
            let _ = write!(s, ",{}", m.method);
        }
        s.push('\n');
        let cell = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        for (name, get) in [
            ("wasserstein_similarity", (|m: &MethodAggregate| m.wasserstein_similarity) as fn(&MethodAggregate) -> Option<f64>),
            ("ged", |m: &MethodAggregate| m.ged),
        ] {
            s.push_str(name);
            for m in &self.methods {
                let _ = write!(s, ",{}", cell(get(m)));
            }
            s.push('\n');
        }
        for (name, get) in [
            ("scored", (|m: &MethodAggregate| m.scored) as fn(&MethodAggregate) -> usize),
            ("excluded", |m: &MethodAggregate| m.excluded),
        ] {
            s.push_str(name);
            for m in &self.methods {
                let _ = write!(s, ",{}", get(m));
            }
            s.push('\n');
        }
        s
    }
}

fn score(bench: &Path, run_dir: &Path, method: &str, id: &str) -> Result<SampleResult> {
    let meta: SampleMeta = read_json(&bench.join(id).join("meta.json"))?;
    let reference = Multigraph::read_json(&bench.join(id).join("graph.json"))?;
    let dir = run_dir.join(method).join(id);
    let status: Option<SampleStatus> = read_json(&dir.join(STATUS)).ok();
    let mut result = SampleResult {
        sample_id: id.to_string(),
        method: method.to_string(),
        tower_level: status.as_ref().and_then(|s| s.tower_level),
        scored: false,
        error: None,
        wasserstein_similarity: None,
        ged: None,
        distance: None,
        diagram: None,
        difficulty: meta.requested,
        timing_ms: status.as_ref().map(|s| s.timing_ms),
    };
    let recovered = match &status {
        None => Err("no status.json".to_string()),
        Some(s) if !s.ok => Err(s.error.clone().unwrap_or_else(|| "method failed".into())),
        Some(_) => Multigraph::read_json(&dir.join("graph.json")).map_err(|e| e.to_string()),
    };
    match recovered {
        Ok(g) => {
            let c = compare(&g, &reference);
            result.scored = true;
            result.wasserstein_similarity = Some(c.wasserstein_similarity);
            result.ged = Some(c.ged);
            result.distance = Some(c.distance);
            result.diagram = Some(Diagrams {
                recovered: c.recovered,
                reference: c.reference,
            });
        }
        Err(e) => result.error = Some(e),
    }
    Ok(result)
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut s, mut n) = (0.0, 0usize);
    for x in xs {
        s += x;
        n += 1;
    }
    (n > 0).then(|| s / n as f64)
}

/// Score every method output of `run_dir` against the benchmark's latent
/// graphs. Writes `out/<method>/<sample_id>/results.json` and
/// `out/aggregate.csv`; inputs are only read.
pub fn cmd_evaluate(bench: &Path, run_dir: &Path, out: &Path) -> Result<EvalSummary> {
    let manifest = super::load_manifest(bench)?;
    let run: RunManifest = read_json(&run_dir.join(RUN_MANIFEST)).map_err(|_| {
        Error::Harness(format!("{} is not a complete run (no {RUN_MANIFEST})", run_dir.display()))
    })?;
    let jobs: Vec<(&String, &String)> = run
        .method_dirs
        .iter()
        .flat_map(|m| manifest.samples.iter().map(move |s| (m, s)))
        .collect();
    let results: Vec<SampleResult> = jobs
        .par_iter()
        .map(|(m, id)| score(bench, run_dir, m, id))
        .collect::<Result<_>>()?;
    let mut methods = Vec::new();
    for m in &run.method_dirs {
        let mine: Vec<&SampleResult> = results.iter().filter(|r| &r.method == m).collect();
        let scored: Vec<&&SampleResult> = mine.iter().filter(|r| r.scored).collect();
        methods.push(MethodAggregate {
            method: m.clone(),
            wasserstein_similarity: mean(scored.iter().filter_map(|r| r.wasserstein_similarity)),
            ged: mean(scored.iter().filter_map(|r| r.ged)),
            scored: scored.len(),
            excluded: mine.len() - scored.len(),
        });
    }
    for r in &results {
        let dir: PathBuf = out.join(&r.method).join(&r.sample_id);
        std::fs::create_dir_all(&dir)?;
        write_json(&dir.join(RESULTS), r)?;
    }
    let summary = EvalSummary { methods };
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join(AGGREGATE_FILE), summary.to_csv())?;
    write_json(&out.join("summary.json"), &summary)?;
    Ok(summary)
}
