use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::generate::load_manifest;
use super::methods::{Method, RunConfig};
use super::{pool, read_json, write_json};
use crate::baselines::mapper_graph;
use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::graph::Multigraph;
use crate::reeb::{screeb, screeb_tower, ReebParams};

pub const RUN_MANIFEST: &str = "run.json";
pub const STATUS: &str = "status.json";
pub const TOWER: &str = "tower.json";

/// `status.json` written beside every method output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStatus {
    pub sample_id: String,
    pub method: String,
    pub input_hash: String,
    pub ok: bool,
    pub error: Option<String>,
    pub timing_ms: f64,
    pub tower_level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerEntry {
    pub level: usize,
    pub file: String,
    pub points: usize,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerManifest {
    pub scored_level: usize,
    pub levels: Vec<TowerEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub bench: String,
    pub methods: Vec<String>,
    pub method_dirs: Vec<String>,
    pub reeb: ReebParams,
    pub mapper: crate::baselines::MapperParams,
    pub tower_level: usize,
    pub samples: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub ok: usize,
    pub failed: usize,
    /// Outputs reused because their input hash was unchanged.
    pub cached: usize,
}

fn input_hash(method: &Method, cfg: &RunConfig, bench: &Path, id: &str) -> Result<String> {
    let mut h = Sha256::new();
    h.update(method.to_string().as_bytes());
    h.update([0]);
    let source = match method {
        Method::Oracle => bench.join(id).join("graph.json"),
        Method::External(dir) => dir.join(id).join("graph.json"),
        _ => bench.join(id).join("points.csv"),
    };
    match std::fs::read(&source) {
        Ok(bytes) => h.update(&bytes),
        Err(_) => h.update(b"missing"),
    }
    match method {
        Method::Screeb | Method::ScreebTower => {
            h.update(serde_json::to_string(&cfg.params.reeb)?.as_bytes());
            h.update(cfg.scored_level().to_le_bytes());
        }
        Method::Mapper => h.update(serde_json::to_string(&cfg.params.mapper)?.as_bytes()),
        _ => {}
    }
    Ok(hex::encode(h.finalize()))
}

fn execute(method: &Method, cfg: &RunConfig, bench: &Path, id: &str, dir: &Path) -> Result<Option<usize>> {
    let cloud = || PointCloud::read_csv(&bench.join(id).join("points.csv"));
    let graph = match method {
        Method::Screeb => {
            let params = ReebParams {
                levels: 0,
                ..cfg.params.reeb.clone()
            };
            screeb(&cloud()?, &params)?
        }
        Method::ScreebTower => {
            let cloud = cloud()?;
            let tower = screeb_tower(&cloud, &cfg.params.reeb)?;
            let scored = cfg.scored_level();
            let mut levels = Vec::new();
            for l in &tower.levels {
                let file = format!("level_{}.json", l.level);
                l.graph.write_json(&dir.join(&file))?;
                levels.push(TowerEntry {
                    level: l.level,
                    file,
                    points: l.cloud.len(),
                    vertices: l.graph.vertex_count(),
                    edges: l.graph.edge_count(),
                });
            }
            write_json(&dir.join(TOWER), &TowerManifest { scored_level: scored, levels })?;
            tower.levels[scored].graph.clone()
        }
        Method::Mapper => mapper_graph(&cloud()?, &cfg.params.mapper)?,
        Method::Oracle => Multigraph::read_json(&bench.join(id).join("graph.json"))?,
        Method::External(src) => {
            let path = src.join(id).join("graph.json");
            if !path.is_file() {
                return Err(Error::Harness(format!("missing {}", path.display())));
            }
            Multigraph::read_json(&path)?
        }
    };
    graph.write_json(&dir.join("graph.json"))?;
    Ok(matches!(method, Method::ScreebTower).then(|| cfg.scored_level()))
}

fn run_one(method: &Method, cfg: &RunConfig, id: &str) -> Result<(SampleStatus, bool)> {
    let dir = cfg.out.join(method.dir_name()).join(id);
    std::fs::create_dir_all(&dir)?;
    let hash = input_hash(method, cfg, &cfg.bench, id)?;
    let status_path = dir.join(STATUS);
    if let Ok(prev) = read_json::<SampleStatus>(&status_path) {
        if prev.ok && prev.input_hash == hash && dir.join("graph.json").is_file() {
            return Ok((prev, true));
        }
    }
    let start = Instant::now();
    let outcome = execute(method, cfg, &cfg.bench, id, &dir);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let status = match outcome {
        Ok(level) => SampleStatus {
            sample_id: id.to_string(),
            method: method.to_string(),
            input_hash: hash,
            ok: true,
            error: None,
            timing_ms,
            tower_level: level,
        },
        Err(e) => {
            let _ = std::fs::remove_file(dir.join("graph.json"));
            log::warn!("{method} failed on {id}: {e}");
            SampleStatus {
                sample_id: id.to_string(),
                method: method.to_string(),
                input_hash: hash,
                ok: false,
                error: Some(e.to_string()),
                timing_ms,
                tower_level: None,
            }
        }
    };
    write_json(&status_path, &status)?;
    Ok((status, false))
}

/// Apply every method to every benchmark sample, writing
/// `out/<method>/<sample_id>/{graph.json,status.json}`. A failing sample is
/// recorded in its status file and does not stop the batch.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let manifest = load_manifest(&cfg.bench)?;
    std::fs::create_dir_all(&cfg.out)?;
    let jobs: Vec<(&Method, &String)> = cfg
        .methods
        .iter()
        .flat_map(|m| manifest.samples.iter().map(move |s| (m, s)))
        .collect();
    let results: Vec<Result<(SampleStatus, bool)>> =
        pool(cfg.workers)?.install(|| jobs.par_iter().map(|(m, id)| run_one(m, cfg, id)).collect());
    let mut summary = RunSummary::default();
    for r in results {
        let (status, cached) = r?;
        if status.ok {
            summary.ok += 1;
        } else {
            summary.failed += 1;
        }
        if cached {
            summary.cached += 1;
        }
    }
    let run = RunManifest {
        bench: cfg.bench.display().to_string(),
        methods: cfg.methods.iter().map(|m| m.to_string()).collect(),
        method_dirs: cfg.methods.iter().map(|m| m.dir_name()).collect(),
        reeb: cfg.params.reeb.clone(),
        mapper: cfg.params.mapper.clone(),
        tower_level: cfg.scored_level(),
        samples: manifest.samples,
    };
    write_json(&cfg.out.join(RUN_MANIFEST), &run)?;
    Ok(summary)
}
