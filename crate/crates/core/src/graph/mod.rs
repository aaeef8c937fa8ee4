//! Multigraphs, components, Betti numbers and degree-2 reduction.

mod io;
mod multigraph;
mod ops;
mod unionfind;

pub use multigraph::{BettiPair, Edge, Multigraph};
pub use ops::{betti, connected_components, reduce};
pub use unionfind::UnionFind;
