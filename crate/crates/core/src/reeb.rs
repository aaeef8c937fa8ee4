//! Reeb graphs of the Fiedler filter on a point cloud's kNN graph, and the
//! tower of Reeb graphs over successive diffusion condensations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    adaptive_affinity, condense_with_bandwidth, diffusion_operator, fiedler_filter, knn_graph, NeighborGraph,
    PointCloud,
};
use crate::graph::{reduce, Edge, Multigraph, UnionFind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReebParams {
    pub k: usize,
    pub levels: usize,
    /// `None` means `min(80, n - 1)`.
    pub k_smooth: Option<usize>,
    /// Bandwidth neighbor for the condensation kernel; `None` means `k`.
    pub k_bw_smooth: Option<usize>,
    pub t: usize,
}

impl Default for ReebParams {
    fn default() -> Self {
        ReebParams {
            k: 15,
            levels: 1,
            k_smooth: None,
            k_bw_smooth: None,
            t: 1,
        }
    }
}

impl ReebParams {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::config("k", "must be at least 2"));
        }
        if matches!(self.k_smooth, Some(k) if k < 2) {
            return Err(Error::config("k_smooth", "must be at least 2"));
        }
        if self.k_bw_smooth == Some(0) {
            return Err(Error::config("k_bw_smooth", "must be at least 1"));
        }
        if self.t < 1 {
            return Err(Error::config("t", "must be at least 1"));
        }
        Ok(())
    }

    pub fn smoothing_neighbors(&self, n: usize) -> usize {
        self.k_smooth.unwrap_or(80).min(n.saturating_sub(1))
    }
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub level: usize,
    pub cloud: PointCloud,
    pub graph: Multigraph,
}

#[derive(Clone, Debug)]
pub struct ReebTower {
    pub levels: Vec<TowerLevel>,
}

impl ReebTower {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn last(&self) -> &TowerLevel {
        self.levels.last().expect("a tower has at least its base level")
    }
}

/// Reeb graph of `f` on a connected neighbor graph.
///
/// One threshold sits midway between each pair of consecutive distinct
/// filter values. The edges crossing a threshold form its level set; each
/// connected piece becomes a node at the centroid of the vertices it touches.
/// Pieces at adjacent thresholds are joined when they touch a common vertex.
/// Vertices joined by an edge with equal filter values count as one vertex
/// for that purpose, since such an edge never crosses a threshold.
pub fn reeb_graph(nbrs: &NeighborGraph, f: &[f64], positions: &PointCloud) -> Result<Multigraph> {
    let n = nbrs.len();
    if f.len() != n || positions.len() != n {
        return Err(Error::InvalidData(format!(
            "filter has {} values and positions {} rows for {n} vertices",
            f.len(),
            positions.len()
        )));
    }
    if n == 0 {
        return Err(Error::DegenerateInput("empty neighbor graph".into()));
    }
    if let Some(i) = f.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidData(format!("filter value {i} is not finite")));
    }
    let parts = nbrs.components().len();
    if parts > 1 {
        return Err(Error::Disconnected { components: parts });
    }

    let mut values = f.to_vec();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let s = values.len();
    if s == 1 {
        return Ok(Multigraph::with_positions(vec![positions.centroid()]));
    }
    let rank: Vec<usize> = f
        .iter()
        .map(|x| values.partition_point(|v| v < x))
        .collect();

    let edges = nbrs.edges();
    let mut tie = UnionFind::new(n);
    let mut starting: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s - 1];
    for &(a, b, _) in &edges {
        let (lo, hi) = if rank[a] <= rank[b] { (a, b) } else { (b, a) };
        if rank[lo] == rank[hi] {
            tie.union(lo, hi);
        } else {
            starting[rank[lo]].push((lo, hi));
        }
    }
    let class: Vec<usize> = (0..n).map(|v| tie.find(v)).collect();

    let mut reeb = Multigraph::new(0);
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut active: Vec<(usize, usize)> = Vec::new();
    let mut local = vec![usize::MAX; n];
    let mut prev_classes: Vec<(usize, usize)> = Vec::new();
    let mut cur_classes: Vec<(usize, usize)> = Vec::new();

    for (i, starts) in starting.iter().enumerate() {
        active.retain(|&(_, hi)| rank[hi] > i);
        active.extend_from_slice(starts);

        let mut touched: Vec<usize> = Vec::new();
        for &(a, b) in &active {
            for v in [a, b] {
                if local[v] == usize::MAX {
                    local[v] = touched.len();
                    touched.push(v);
                }
            }
        }
        let mut uf = UnionFind::new(touched.len());
        for &(a, b) in &active {
            uf.union(local[a], local[b]);
        }
        let base = reeb.vertex_count();
        let groups = uf.groups();
        let mut node_of = vec![0usize; touched.len()];
        for (gi, group) in groups.iter().enumerate() {
            let members: Vec<usize> = group.iter().map(|&l| touched[l]).collect();
            reeb.add_vertex(Some(positions.centroid_of(&members)));
            for &l in group {
                node_of[l] = base + gi;
            }
        }

        cur_classes.clear();
        for (l, &v) in touched.iter().enumerate() {
            cur_classes.push((class[v], node_of[l]));
        }
        cur_classes.sort_unstable();
        cur_classes.dedup();
        for &(c, node) in &cur_classes {
            let from = prev_classes.partition_point(|&(pc, _)| pc < c);
            for &(_, p) in prev_classes[from..].iter().take_while(|&&(pc, _)| pc == c) {
                links.push((p, node));
            }
        }
        std::mem::swap(&mut prev_classes, &mut cur_classes);
        for &v in &touched {
            local[v] = usize::MAX;
        }
    }

    links.sort_unstable();
    links.dedup();
    for (a, b) in links {
        let length = crate::geometry::euclidean(
            reeb.position(a).expect("reeb nodes carry positions"),
            reeb.position(b).expect("reeb nodes carry positions"),
        );
        reeb.push_edge(Edge::new(a, b, length))?;
    }
    Ok(reeb)
}

/// Reduced Reeb graph of the per-component Fiedler filters.
pub fn screeb(cloud: &PointCloud, params: &ReebParams) -> Result<Multigraph> {
    params.validate()?;
    let nbrs = knn_graph(cloud, params.k, true)?;
    let w = adaptive_affinity(cloud, &nbrs, nbrs.k())?;
    let op = diffusion_operator(&w)?;
    let components = w.components();
    let pieces: Vec<Multigraph> = components
        .par_iter()
        .map(|comp| -> Result<Multigraph> {
            let f = fiedler_filter(&op, comp)?;
            let sub = nbrs.subgraph(comp);
            let pos = cloud.select(comp)?;
            reeb_graph(&sub, &f, &pos)
        })
        .collect::<Result<_>>()?;
    let union = pieces
        .iter()
        .fold(Multigraph::new(0), |acc, g| acc.disjoint_union(g));
    Ok(reduce(&union))
}

/// `levels + 1` reduced Reeb graphs; level `i > 0` runs on the cloud after `i`
/// condensation steps, each with an operator rebuilt from the previous cloud.
pub fn screeb_tower(cloud: &PointCloud, params: &ReebParams) -> Result<ReebTower> {
    params.validate()?;
    let mut clouds = vec![cloud.clone()];
    let k_smooth = params.smoothing_neighbors(cloud.len());
    for _ in 0..params.levels {
        let k_bw = params.k_bw_smooth.unwrap_or(params.k);
        let next = condense_with_bandwidth(clouds.last().unwrap(), k_smooth, k_bw, params.t)?;
        clouds.push(next);
    }
    let graphs: Vec<Multigraph> = clouds
        .par_iter()
        .map(|c| screeb(c, params))
        .collect::<Result<_>>()?;
    Ok(ReebTower {
        levels: clouds
            .into_iter()
            .zip(graphs)
            .enumerate()
            .map(|(level, (cloud, graph))| TowerLevel {
                level,
                cloud,
                graph,
            })
            .collect(),
    })
}
