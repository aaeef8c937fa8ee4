//! Topology-aware graph comparison: edge-length persistence, Wasserstein
//! similarity, approximate edit distance and persistence images.

pub mod assignment;
mod compare;
mod diagram;
mod ged;
mod image;
mod wasserstein;

pub use compare::{compare, Comparison};
pub use diagram::{edge_length_diagram, PersistenceDiagram};
pub use ged::{approx_ged, mapping_cost};
pub use image::{persistence_image, PersistenceImage, GRID, IMAGE_LEN, SIGMA};
pub use wasserstein::{
    persistence_similarity, wasserstein_distance, wasserstein_terms, WassersteinTerms,
};
