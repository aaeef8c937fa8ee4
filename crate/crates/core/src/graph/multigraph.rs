use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge; `u == v` is a self-loop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
    pub multiplicity: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, length: f64) -> Self {
        Edge {
            u,
            v,
            length,
            multiplicity: 1,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Component and cycle counts of a 1-complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiPair {
    pub b0: usize,
    pub b1: usize,
}

impl BettiPair {
    pub fn new(b0: usize, b1: usize) -> Self {
        BettiPair { b0, b1 }
    }
}

impl std::fmt::Display for BettiPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(b0={}, b1={})", self.b0, self.b1)
    }
}

/// Multigraph on vertices `0..V` with optional ambient positions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Multigraph {
    positions: Vec<Option<Vec<f64>>>,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// `n` vertices without positions and no edges.
    pub fn new(n: usize) -> Self {
        Multigraph {
            positions: vec![None; n],
            edges: Vec::new(),
        }
    }

    pub fn with_positions(positions: Vec<Vec<f64>>) -> Self {
        Multigraph {
            positions: positions.into_iter().map(Some).collect(),
            edges: Vec::new(),
        }
    }

    pub fn from_parts(positions: Vec<Option<Vec<f64>>>, edges: Vec<Edge>) -> Result<Self> {
        let mut g = Multigraph {
            positions,
            edges: Vec::with_capacity(edges.len()),
        };
        for e in edges {
            g.push_edge(e)?;
        }
        Ok(g)
    }

    /// Unit-length edges from an endpoint list.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1.0)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, position: Option<Vec<f64>>) -> usize {
        self.positions.push(position);
        self.positions.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, length: f64) -> Result<()> {
        self.push_edge(Edge::new(u, v, length))
    }

    pub fn push_edge(&mut self, e: Edge) -> Result<()> {
        let n = self.vertex_count();
        if e.u >= n || e.v >= n {
            return Err(Error::InvalidData(format!(
                "edge ({}, {}) references a vertex outside 0..{n}",
                e.u, e.v
            )));
        }
        if !(e.length.is_finite() && e.length >= 0.0) {
            return Err(Error::InvalidData(format!(
                "edge ({}, {}) has invalid length {}",
                e.u, e.v, e.length
            )));
        }
        if e.multiplicity == 0 {
            return Err(Error::InvalidData(format!(
                "edge ({}, {}) has zero multiplicity",
                e.u, e.v
            )));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Edge count with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn position(&self, v: usize) -> Option<&[f64]> {
        self.positions[v].as_deref()
    }

    pub fn positions(&self) -> &[Option<Vec<f64>>] {
        &self.positions
    }

    pub fn set_position(&mut self, v: usize, p: Option<Vec<f64>>) {
        self.positions[v] = p;
    }

    pub fn has_all_positions(&self) -> bool {
        self.positions.iter().all(Option::is_some)
    }

    pub fn strip_positions(&self) -> Self {
        Multigraph {
            positions: vec![None; self.vertex_count()],
            edges: self.edges.clone(),
        }
    }

    /// Degree with multiplicity; a self-loop counts 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.u] += e.multiplicity;
            deg[e.v] += e.multiplicity;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees()[v]
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn self_loop_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.vertex_count()];
        for e in self.edges.iter().filter(|e| e.is_loop()) {
            c[e.u] += e.multiplicity;
        }
        c
    }

    pub fn total_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| e.length * e.multiplicity as f64)
            .sum()
    }

    pub fn max_edge_length(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.length).reduce(f64::max)
    }

    /// Every edge repeated by its multiplicity, each with multiplicity 1.
    pub fn expanded_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .flat_map(|e| std::iter::repeat_n(Edge { multiplicity: 1, ..*e }, e.multiplicity))
            .collect()
    }

    /// Incident expanded-edge ids per vertex; a self-loop appears twice.
    pub(crate) fn incidence(edges: &[Edge], n: usize) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            inc[e.u].push(id);
            inc[e.v].push(id);
        }
        inc
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let off = self.vertex_count();
        let mut g = self.clone();
        g.positions.extend(other.positions.iter().cloned());
        g.edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + off,
            v: e.v + off,
            ..*e
        }));
        g
    }

    /// Relabel vertices: `order[i]` is the old id of new vertex `i`.
    /// Vertices missing from `order` are dropped along with their edges.
    pub fn relabel(&self, order: &[usize]) -> Multigraph {
        let mut map = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        Multigraph {
            positions: order.iter().map(|&o| self.positions[o].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
                .map(|e| Edge {
                    u: map[e.u],
                    v: map[e.v],
                    ..*e
                })
                .collect(),
        }
    }

    /// The subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        self.relabel(vertices)
    }

    /// Canonical form: vertices sorted by position (then old id) when every
    /// vertex has one, edges sorted by `(min, max, length)` with identical
    /// triples merged into one multiplicity.
    pub fn canonical(&self) -> Multigraph {
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        if self.has_all_positions() {
            order.sort_by(|&a, &b| {
                let (pa, pb) = (self.positions[a].as_ref().unwrap(), self.positions[b].as_ref().unwrap());
                lex_cmp(pa, pb).then(a.cmp(&b))
            });
        }
        let mut g = self.relabel(&order);
        for e in &mut g.edges {
            let (a, b) = e.key();
            e.u = a;
            e.v = b;
        }
        g.edges.sort_by(|x, y| {
            (x.u, x.v)
                .cmp(&(y.u, y.v))
                .then(x.length.total_cmp(&y.length))
        });
        let mut merged: Vec<Edge> = Vec::with_capacity(g.edges.len());
        for e in g.edges {
            match merged.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v && last.length == e.length => {
                    last.multiplicity += e.multiplicity
                }
                _ => merged.push(e),
            }
        }
        g.edges = merged;
        g
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
