//! # topobench
//!
//! Recover reduced-graph "shapes" from point clouds and score them against a
//! known latent graph.
//!
//! The crate is organised around one pipeline:
//!
//! 1. [`synth`] samples a latent multigraph from six topology classes, embeds
//!    it, thickens edges into tubes and draws a noisy point cloud.
//! 2. [`reeb`] recovers a reduced graph from the cloud: kNN graph, adaptive
//!    Gaussian affinities, diffusion operator, Fiedler filter, Reeb graph of
//!    the filter's level sets, and optionally a tower of diffusion-condensed
//!    levels. [`baselines`] provides Mapper as the comparison method.
//! 3. [`metrics`] compares recovered and latent graphs through edge-length
//!    persistence (Wasserstein similarity), approximate graph edit distance and
//!    persistence images.
//! 4. [`harness`] wires the above into on-disk benchmark, run and evaluation
//!    directories, driven by the `bench` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod baselines;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod reeb;
pub mod synth;

pub use error::{Error, Result};
pub use geometry::PointCloud;
pub use graph::{BettiPair, Multigraph};
