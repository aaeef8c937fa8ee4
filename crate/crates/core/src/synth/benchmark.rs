use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use super::embed::{embed_graph, EmbedKnobs};
use super::sample::{sample_point_cloud, Difficulty, Parent, Realized};
use super::topology::sample_topology;
use super::validate::validate;
use super::Reject;
use crate::error::{Error, Result};
use crate::geometry::{euclidean, PointCloud};
use crate::graph::{betti, reduce, BettiPair, Edge, Multigraph};

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sample `index` under benchmark seed `seed`.
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

pub fn sample_id(index: usize) -> String {
    format!("sample_{index:04}")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentMeta {
    pub class: String,
    pub first_vertex: usize,
    pub vertex_count: usize,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub id: String,
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub requested: Difficulty,
    pub knobs: EmbedKnobs,
    pub realized: Realized,
    pub components: Vec<ComponentMeta>,
    pub betti: BettiPair,
    pub attempts: usize,
    pub rejects: BTreeMap<String, usize>,
    /// Latent vertex positions and edges in generation order, which `parents`
    /// refers to.
    pub latent_positions: Vec<Vec<f64>>,
    pub latent_edges: Vec<(usize, usize)>,
    pub parents: Vec<Parent>,
}

#[derive(Clone, Debug)]
pub struct SyntheticSample {
    pub cloud: PointCloud,
    /// Latent graph with vertex positions and Euclidean edge lengths.
    pub graph: Multigraph,
    /// Chains of degree-2 vertices contracted.
    pub reduced: Multigraph,
    pub meta: SampleMeta,
}

impl SyntheticSample {
    pub fn id(&self) -> String {
        sample_id(self.meta.index)
    }

    /// Write `points.csv`, `graph.json` and `meta.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        self.cloud.write_csv(&dir.join("points.csv"))?;
        self.graph.write_json(&dir.join("graph.json"))?;
        let meta = serde_json::to_string_pretty(&self.meta)?;
        std::fs::write(dir.join("meta.json"), meta + "\n")?;
        Ok(())
    }
}

fn sample_dim<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 2;
    for (&d, &p) in &cfg.dim_probabilities {
        acc += p;
        last = d;
        if u < acc {
            return d;
        }
    }
    last
}

/// Generate sample `index` by rejection: each attempt draws difficulty,
/// ambient dimension, topology and embedding knobs afresh.
pub fn generate_sample(cfg: &GeneratorConfig, seed: u64, index: usize) -> Result<SyntheticSample> {
    let s = sample_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let mut rejects: BTreeMap<String, usize> = BTreeMap::new();
    let mut last = None;
    for attempt in 0..cfg.max_rejects {
        let difficulty = Difficulty::sample(cfg, &mut rng);
        last = Some(difficulty);
        let dim = sample_dim(cfg, &mut rng);
        let result = (|| -> std::result::Result<_, Reject> {
            let topo = sample_topology(cfg, &mut rng).ok_or(Reject::TopologyCaps)?;
            let knobs = EmbedKnobs::sample(cfg, &mut rng);
            let emb = embed_graph(&topo, dim, cfg, knobs, &mut rng)?;
            let sampled = sample_point_cloud(&emb, &difficulty, cfg, &mut rng)?;
            validate(&sampled, cfg)?;
            Ok((topo, knobs, sampled))
        })();
        let (topo, knobs, sampled) = match result {
            Ok(x) => x,
            Err(r) => {
                *rejects.entry(r.name().to_string()).or_default() += 1;
                continue;
            }
        };
        let mut graph = Multigraph::with_positions(sampled.positions.clone());
        for &(a, b) in &sampled.edges {
            let len = euclidean(&sampled.positions[a], &sampled.positions[b]);
            graph.push_edge(Edge::new(a, b, len))?;
        }
        let reduced = reduce(&graph);
        let cloud = PointCloud::from_rows(&sampled.points)?;
        let mut points = vec![0usize; topo.components.len()];
        for &c in &sampled.component_of_point {
            points[c] += 1;
        }
        let components = topo
            .components
            .iter()
            .zip(points)
            .map(|(p, points)| ComponentMeta {
                class: p.class.name().to_string(),
                first_vertex: p.offset,
                vertex_count: p.vertex_count,
                points,
            })
            .collect();
        let meta = SampleMeta {
            id: sample_id(index),
            index,
            seed: s,
            dim,
            requested: difficulty,
            knobs,
            realized: sampled.realized,
            components,
            betti: betti(&graph),
            attempts: attempt + 1,
            rejects,
            latent_positions: sampled.positions,
            latent_edges: sampled.edges,
            parents: sampled.parents,
        };
        return Ok(SyntheticSample {
            cloud,
            graph,
            reduced,
            meta,
        });
    }
    Err(Error::GenerationExhausted {
        index,
        attempts: cfg.max_rejects,
        requested: format!("{last:?}; rejects {rejects:?}"),
    })
}

/// `n` samples in index order; identical for identical `(cfg, seed)`
/// regardless of thread count.
pub fn generate_benchmark(cfg: &GeneratorConfig, n: usize, seed: u64) -> Result<Vec<SyntheticSample>> {
    cfg.validate()?;
    (0..n).into_par_iter().map(|i| generate_sample(cfg, seed, i)).collect()
}
