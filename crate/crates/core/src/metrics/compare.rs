use serde::{Deserialize, Serialize};

use super::diagram::{edge_length_diagram, PersistenceDiagram};
use super::ged::approx_ged;
use super::wasserstein::{persistence_similarity, wasserstein_terms, WassersteinTerms};
use crate::graph::{reduce, Multigraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub wasserstein_similarity: f64,
    pub ged: f64,
    pub distance: WassersteinTerms,
    pub recovered: PersistenceDiagram,
    pub reference: PersistenceDiagram,
}

/// Reduce both graphs, compare their normalised edge-length diagrams and
/// their combinatorial structure.
pub fn compare(recovered: &Multigraph, reference: &Multigraph) -> Comparison {
    let (s, g) = (reduce(recovered), reduce(reference));
    let (ds, dg) = (edge_length_diagram(&s, true), edge_length_diagram(&g, true));
    let terms = wasserstein_terms(&ds, &dg, 1.0).expect("both diagrams are normalized");
    Comparison {
        wasserstein_similarity: persistence_similarity(terms.total())
            .expect("distances are non-negative"),
        ged: approx_ged(&s, &g),
        distance: terms,
        recovered: ds,
        reference: dg,
    }
}
