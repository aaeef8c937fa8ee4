//! Point clouds, neighborhood graphs, adaptive affinities, diffusion
//! operators and their spectra, and diffusion condensation.

mod affinity;
mod cloud;
mod condense;
mod diffusion;
mod knn;
pub mod spectral;

pub use affinity::{adaptive_affinity, AffinityMatrix};
pub use cloud::{euclidean, squared_euclidean, PointCloud};
pub use condense::{condense, condense_with_bandwidth};
pub use diffusion::{diffusion_operator, fiedler_filter, DiffusionOperator, Spectrum};
pub use knn::{knn_graph, Neighbor, NeighborGraph};
pub(crate) use knn::nearest;
