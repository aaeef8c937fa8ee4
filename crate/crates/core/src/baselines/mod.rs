//! Mapper with a PCA lens and DBSCAN clustering inside cover cells.

mod dbscan;
mod mapper;
mod pca;

pub use dbscan::{dbscan, NOISE};
pub use mapper::{dbscan_eps, mapper_graph, mapper_nodes, MapperParams};
pub use pca::pca_lens;
