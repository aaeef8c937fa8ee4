use rayon::prelude::*;

use super::cloud::{euclidean, PointCloud};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

/// Exact k-nearest-neighbor graph.
///
/// `knn[i]` holds the `k` nearest other vertices of `i` ordered by
/// `(distance, index)`. `adjacency[i]` is the edge set used by downstream
/// code, sorted by neighbor index; when `symmetrized` it is the union of the
/// directed kNN relation.
#[derive(Clone, Debug)]
pub struct NeighborGraph {
    n: usize,
    k: usize,
    knn: Vec<Vec<Neighbor>>,
    adjacency: Vec<Vec<Neighbor>>,
    symmetrized: bool,
}

impl NeighborGraph {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Neighbor count after clamping to `n - 1`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrized
    }

    pub fn knn(&self, i: usize) -> &[Neighbor] {
        &self.knn[i]
    }

    pub fn neighbors(&self, i: usize) -> &[Neighbor] {
        &self.adjacency[i]
    }

    /// Undirected edges `(i, j, distance)` with `i < j`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out: Vec<(usize, usize, f64)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| {
                nbrs.iter()
                    .map(move |nb| (i.min(nb.index), i.max(nb.index), nb.distance))
            })
            .collect();
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        out
    }

    /// Build a symmetric graph from an explicit edge list; distances are read
    /// from `cloud`. The `knn` lists equal the adjacency ordered by distance.
    pub fn from_edges(cloud: &PointCloud, edges: &[(usize, usize)]) -> Result<Self> {
        let n = cloud.len();
        let mut adjacency: Vec<Vec<Neighbor>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidData(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                continue;
            }
            let distance = cloud.distance(a, b);
            adjacency[a].push(Neighbor { index: b, distance });
            adjacency[b].push(Neighbor { index: a, distance });
        }
        for list in &mut adjacency {
            list.sort_by_key(|nb| nb.index);
            list.dedup_by_key(|nb| nb.index);
        }
        let knn = adjacency.iter().map(|l| sorted_by_distance(l.clone())).collect();
        let k = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Self {
            n,
            k,
            knn,
            adjacency,
            symmetrized: true,
        })
    }

    /// Induced subgraph on `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn subgraph(&self, vertices: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            local[old] = new;
        }
        let remap = |list: &[Neighbor]| -> Vec<Neighbor> {
            list.iter()
                .filter(|nb| local[nb.index] != usize::MAX)
                .map(|nb| Neighbor {
                    index: local[nb.index],
                    distance: nb.distance,
                })
                .collect()
        };
        let adjacency: Vec<Vec<Neighbor>> = vertices
            .iter()
            .map(|&v| {
                let mut l = remap(&self.adjacency[v]);
                l.sort_by_key(|nb| nb.index);
                l
            })
            .collect();
        let knn = vertices.iter().map(|&v| remap(&self.knn[v])).collect();
        Self {
            n: vertices.len(),
            k: self.k,
            knn,
            adjacency,
            symmetrized: self.symmetrized,
        }
    }

    /// Connected components of the adjacency relation, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::graph::UnionFind::new(self.n);
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for nb in nbrs {
                uf.union(i, nb.index);
            }
        }
        uf.groups()
    }
}

fn sorted_by_distance(mut list: Vec<Neighbor>) -> Vec<Neighbor> {
    list.sort_by(|a, b| a.distance.total_cmp(&b.distance).then(a.index.cmp(&b.index)));
    list
}

/// Exact brute-force kNN graph. `k` is clamped to `n - 1`.
pub fn knn_graph(cloud: &PointCloud, k: usize, symmetrize: bool) -> Result<NeighborGraph> {
    let n = cloud.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!(
            "kNN graph needs at least 2 points, got {n}"
        )));
    }
    if k == 0 {
        return Err(Error::DegenerateInput("k must be positive".into()));
    }
    let k = k.min(n - 1);
    let knn: Vec<Vec<Neighbor>> = (0..n)
        .into_par_iter()
        .map(|i| nearest(cloud, i, k))
        .collect();

    let mut adjacency: Vec<Vec<Neighbor>> = knn.clone();
    if symmetrize {
        for (i, list) in knn.iter().enumerate() {
            for nb in list {
                adjacency[nb.index].push(Neighbor {
                    index: i,
                    distance: nb.distance,
                });
            }
        }
    }
    for list in &mut adjacency {
        list.sort_by_key(|nb| nb.index);
        list.dedup_by_key(|nb| nb.index);
    }
    Ok(NeighborGraph {
        n,
        k,
        knn,
        adjacency,
        symmetrized: symmetrize,
    })
}

/// The `k` nearest other rows of `i`, ties broken by index.
pub(crate) fn nearest(cloud: &PointCloud, i: usize, k: usize) -> Vec<Neighbor> {
    let xi = cloud.row(i);
    let mut all: Vec<Neighbor> = (0..cloud.len())
        .filter(|&j| j != i)
        .map(|j| Neighbor {
            index: j,
            distance: euclidean(xi, cloud.row(j)),
        })
        .collect();
    let cmp = |a: &Neighbor, b: &Neighbor| {
        a.distance
            .total_cmp(&b.distance)
            .then(a.index.cmp(&b.index))
    };
    if k < all.len() {
        all.select_nth_unstable_by(k, cmp);
        all.truncate(k);
    }
    all.sort_by(cmp);
    all
}
