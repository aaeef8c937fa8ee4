use nalgebra::DMatrix;

use super::cloud::PointCloud;
use super::knn::{nearest, NeighborGraph};
use crate::error::{Error, Result};
use crate::graph::UnionFind;

/// Sparse symmetric affinity matrix with unit diagonal.
///
/// `rows[i]` lists `(j, w_ij)` sorted by `j` and always contains `(i, 1.0)`.
#[derive(Clone, Debug)]
pub struct AffinityMatrix {
    rows: Vec<Vec<(usize, f64)>>,
    bandwidths: Vec<f64>,
}

impl AffinityMatrix {
    /// Build from explicit symmetric entries. Used for tests and for operators
    /// on hand-made graphs; the diagonal is forced to 1 when absent.
    pub fn from_entries(n: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, w) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidData(format!("entry ({i}, {j}) out of range")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidData(format!("affinity ({i}, {j}) = {w}")));
            }
            rows[i].push((j, w));
            if i != j {
                rows[j].push((i, w));
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            if !row.iter().any(|&(j, _)| j == i) {
                row.push((i, 1.0));
            }
            row.sort_by_key(|e| e.0);
            row.dedup_by_key(|e| e.0);
        }
        Ok(Self {
            rows,
            bandwidths: vec![1.0; n],
        })
    }

    /// Build from a dense symmetric matrix without touching the diagonal.
    pub fn from_dense(w: &DMatrix<f64>) -> Result<Self> {
        let n = w.nrows();
        if w.ncols() != n {
            return Err(Error::InvalidData("affinity matrix must be square".into()));
        }
        let mut rows = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let x = w[(i, j)];
                if !(x.is_finite() && x >= 0.0) {
                    return Err(Error::InvalidData(format!("affinity ({i}, {j}) = {x}")));
                }
                if (x - w[(j, i)]).abs() > 1e-12 * x.abs().max(1.0) {
                    return Err(Error::InvalidData(format!("affinity not symmetric at ({i}, {j})")));
                }
                if x > 0.0 {
                    rows[i].push((j, x));
                }
            }
        }
        Ok(Self {
            rows,
            bandwidths: vec![1.0; n],
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn bandwidths(&self) -> &[f64] {
        &self.bandwidths
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map_or(0.0, |pos| self.rows[i][pos].1)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|e| e.1).sum()).collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] = w;
            }
        }
        m
    }

    /// Connected components of the off-diagonal positive support.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                if w > 0.0 {
                    uf.union(i, j);
                }
            }
        }
        uf.groups()
    }

    /// Undirected off-diagonal edges with positive weight, `i < j`.
    pub fn support_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                if i < j && w > 0.0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Adaptive Gaussian kernel `w_ij = exp(-|x_i - x_j|^2 / (σ_i σ_j))` on the
/// symmetrized support of `nbrs`, with σ_i the distance from `x_i` to its
/// `k_bw`-th nearest neighbor.
///
/// A zero bandwidth (duplicates fill the neighborhood) is replaced by the
/// smallest positive pairwise distance in the cloud.
pub fn adaptive_affinity(
    cloud: &PointCloud,
    nbrs: &NeighborGraph,
    k_bw: usize,
) -> Result<AffinityMatrix> {
    let n = cloud.len();
    if nbrs.len() != n {
        return Err(Error::InvalidData(format!(
            "neighbor graph has {} vertices, cloud has {n}",
            nbrs.len()
        )));
    }
    if k_bw == 0 || k_bw + 1 > n {
        return Err(Error::DegenerateInput(format!(
            "bandwidth neighbor index {k_bw} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let mut sigma: Vec<f64> = (0..n)
        .map(|i| {
            let list = nbrs.knn(i);
            if k_bw <= list.len() {
                list[k_bw - 1].distance
            } else {
                nearest(cloud, i, k_bw)[k_bw - 1].distance
            }
        })
        .collect();
    if sigma.iter().any(|&s| s <= 0.0) {
        let floor = smallest_positive_distance(cloud).ok_or_else(|| {
            Error::InvalidData("all points are identical; bandwidth undefined".into())
        })?;
        for s in &mut sigma {
            if *s <= 0.0 {
                *s = floor;
            }
        }
    }

    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        rows[i].push((i, 1.0));
        for nb in nbrs.neighbors(i) {
            let j = nb.index;
            let w = (-(nb.distance * nb.distance) / (sigma[i] * sigma[j])).exp();
            rows[i].push((j, w));
            rows[j].push((i, w));
        }
    }
    for row in &mut rows {
        row.sort_by_key(|e| e.0);
        row.dedup_by_key(|e| e.0);
    }
    Ok(AffinityMatrix {
        rows,
        bandwidths: sigma,
    })
}

fn smallest_positive_distance(cloud: &PointCloud) -> Option<f64> {
    let mut best = f64::INFINITY;
    for i in 0..cloud.len() {
        for j in i + 1..cloud.len() {
            let d = cloud.distance(i, j);
            if d > 0.0 && d < best {
                best = d;
            }
        }
    }
    best.is_finite().then_some(best)
}
