use serde::{Deserialize, Serialize};

use crate::graph::{Multigraph, UnionFind};

/// Edge-length filtration persistence of a graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    /// Deaths of the finite H0 bars (all born at 0), ascending.
    pub h0_finite: Vec<f64>,
    pub h0_essential: usize,
    /// Births of the H1 bars, ascending; they never die.
    pub h1_essential: Vec<f64>,
    pub normalized: bool,
    /// Length unit the values were divided by (1 when unnormalized).
    pub scale: f64,
}

impl PersistenceDiagram {
    pub fn empty(normalized: bool) -> Self {
        PersistenceDiagram {
            h0_finite: Vec::new(),
            h0_essential: 0,
            h1_essential: Vec::new(),
            normalized,
            scale: 1.0,
        }
    }

    /// Largest finite value present.
    pub fn max_value(&self) -> f64 {
        self.h0_finite
            .iter()
            .chain(&self.h1_essential)
            .fold(0.0, |a, &b| a.max(b))
    }
}

/// Kruskal sweep over edges in `(length, min endpoint, max endpoint)` order.
/// Parallel edges are swept once per multiplicity. With `normalize`, lengths
/// are divided by the longest edge unless that is zero or there are no edges.
pub fn edge_length_diagram(g: &Multigraph, normalize: bool) -> PersistenceDiagram {
    let mut edges = g.expanded_edges();
    edges.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.key().cmp(&b.key()))
    });
    let scale = match g.max_edge_length() {
        Some(m) if normalize && m > 0.0 => m,
        _ => 1.0,
    };
    let mut uf = UnionFind::new(g.vertex_count());
    let mut d = PersistenceDiagram::empty(normalize);
    d.scale = scale;
    for e in &edges {
        let x = e.length / scale;
        if uf.union(e.u, e.v) {
            d.h0_finite.push(x);
        } else {
            d.h1_essential.push(x);
        }
    }
    d.h0_essential = uf.count();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(1, 2, 2.0).unwrap();
        g.add_edge(0, 2, 3.0).unwrap();
        let d = edge_length_diagram(&g, false);
        assert_eq!(d.h0_finite, vec![1.0, 2.0]);
        assert_eq!(d.h0_essential, 1);
        assert_eq!(d.h1_essential, vec![3.0]);
    }

    #[test]
    fn single_vertex() {
        let d = edge_length_diagram(&Multigraph::new(1), true);
        assert_eq!(d.h0_essential, 1);
        assert!(d.h0_finite.is_empty() && d.h1_essential.is_empty());
    }

    #[test]
    fn normalized_path() {
        let g = Multigraph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let d = edge_length_diagram(&g, true);
        assert_eq!(d.h0_finite, vec![1.0; 4]);
        assert_eq!(d.h0_essential, 1);
    }
}
