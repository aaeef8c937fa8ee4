use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dbscan::{dbscan, NOISE};
use super::pca::pca_lens;
use crate::error::{Error, Result};
use crate::geometry::{euclidean, nearest, PointCloud};
use crate::graph::{reduce, Multigraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapperParams {
    /// Lens dimension is `min(max_lens_dim, m, n)`.
    pub max_lens_dim: usize,
    pub intervals: usize,
    pub overlap: f64,
    pub min_samples: usize,
    /// `eps = eps_factor × median distance to the eps_neighbor-th other point`.
    pub eps_factor: f64,
    pub eps_neighbor: usize,
    pub seed: u64,
}

impl Default for MapperParams {
    fn default() -> Self {
        MapperParams {
            max_lens_dim: 2,
            intervals: 6,
            overlap: 0.35,
            min_samples: 3,
            eps_factor: 1.5,
            eps_neighbor: 3,
            seed: 0,
        }
    }
}

impl MapperParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.overlap) {
            return Err(Error::config("overlap", "must lie in [0, 1)"));
        }
        if self.intervals == 0 {
            return Err(Error::config("intervals", "must be at least 1"));
        }
        if self.max_lens_dim == 0 {
            return Err(Error::config("max_lens_dim", "must be at least 1"));
        }
        if !(self.eps_factor > 0.0) {
            return Err(Error::config("eps_factor", "must be positive"));
        }
        if self.eps_neighbor == 0 {
            return Err(Error::config("eps_neighbor", "must be at least 1"));
        }
        Ok(())
    }
}

/// `factor ×` the median distance from each point to its `k`-th nearest
/// other point (`k` clamped to `n - 1`).
pub fn dbscan_eps(cloud: &PointCloud, k: usize, factor: f64) -> f64 {
    let k = k.min(cloud.len() - 1).max(1);
    let mut r: Vec<f64> = (0..cloud.len())
        .into_par_iter()
        .map(|i| nearest(cloud, i, k)[k - 1].distance)
        .collect();
    r.sort_by(f64::total_cmp);
    let h = r.len() / 2;
    let median = if r.len() % 2 == 1 {
        r[h]
    } else {
        (r[h - 1] + r[h]) / 2.0
    };
    factor * median
}

/// Mapper nodes as sorted member lists, in cover-cell order, duplicates
/// removed.
pub fn mapper_nodes(cloud: &PointCloud, params: &MapperParams) -> Result<Vec<Vec<usize>>> {
    params.validate()?;
    let n = cloud.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!(
            "Mapper needs at least 2 points, got {n}"
        )));
    }
    let d = params.max_lens_dim.min(cloud.dim()).min(n);
    let lens = pca_lens(cloud, d, params.seed)?;
    let eps = dbscan_eps(cloud, params.eps_neighbor, params.eps_factor);

    let per_axis: Vec<Vec<(f64, f64)>> = (0..d)
        .map(|c| {
            let col = lens.column(c);
            let (lo, hi) = (col.min(), col.max());
            let w = (hi - lo) / params.intervals as f64;
            (0..params.intervals)
                .map(|k| {
                    let a = lo + k as f64 * w;
                    (a - params.overlap * w, a + w + params.overlap * w)
                })
                .collect()
        })
        .collect();
    let cells = params.intervals.pow(d as u32);

    let clusters: Vec<Vec<Vec<usize>>> = (0..cells)
        .into_par_iter()
        .map(|cell| {
            let mut idx = cell;
            let bounds: Vec<(f64, f64)> = (0..d)
                .map(|c| {
                    let b = per_axis[c][idx % params.intervals];
                    idx /= params.intervals;
                    b
                })
                .collect();
            let members: Vec<usize> = (0..n)
                .filter(|&i| {
                    bounds
                        .iter()
                        .enumerate()
                        .all(|(c, &(a, b))| lens[(i, c)] >= a && lens[(i, c)] <= b)
                })
                .collect();
            if members.is_empty() {
                return Vec::new();
            }
            let sub = cloud.select(&members).expect("members are valid rows");
            let labels = dbscan(&sub, eps, params.min_samples);
            let k = labels.iter().copied().max().unwrap_or(NOISE);
            (0..=k)
                .map(|c| {
                    members
                        .iter()
                        .zip(&labels)
                        .filter(|&(_, &l)| l == c)
                        .map(|(&i, _)| i)
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for node in clusters.into_iter().flatten() {
        if seen.insert(node.clone()) {
            nodes.push(node);
        }
    }
    Ok(nodes)
}

/// Reduced Mapper graph: one vertex per node at its members' centroid, an
/// edge between every pair of nodes that share a point.
pub fn mapper_graph(cloud: &PointCloud, params: &MapperParams) -> Result<Multigraph> {
    let nodes = mapper_nodes(cloud, params)?;
    let centroids: Vec<Vec<f64>> = nodes.iter().map(|m| cloud.centroid_of(m)).collect();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); cloud.len()];
    for (k, m) in nodes.iter().enumerate() {
        for &i in m {
            owners[i].push(k);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for o in &owners {
        for (x, &a) in o.iter().enumerate() {
            for &b in &o[x + 1..] {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut g = Multigraph::with_positions(centroids);
    for (a, b) in pairs {
        let len = euclidean(g.position(a).unwrap(), g.position(b).unwrap());
        g.add_edge(a, b, len)?;
    }
    Ok(reduce(&g))
}
