//! Synthetic point clouds sampled around random latent graphs.

mod benchmark;
mod config;
mod embed;
mod sample;
pub mod segments;
mod shapes;
mod topology;
mod validate;

pub use benchmark::{
    generate_benchmark, generate_sample, sample_id, sample_seed, splitmix64, ComponentMeta, SampleMeta,
    SyntheticSample,
};
pub use config::{ClassProbabilities, GeneratorConfig, IntRange, Range};
pub use embed::{embed_graph, random_direction, EmbedKnobs, Embedding};
pub use sample::{sample_point_cloud, Difficulty, Parent, Realized, Sampled};
pub use shapes::{shape_cloud, Shape, BLOB_RADIUS};
pub use topology::{
    plan_edges, sample_class, sample_component, sample_component_count, sample_topology, Anchor,
    ComponentPlan, PathKind, Piece, SampledTopology, TopologyClass,
};
pub use validate::validate;

/// Why a generation attempt was discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reject {
    TopologyCaps,
    Embedding,
    TubeRadius,
    NoiseFloor,
    Separation,
    TubeOverlap,
    ComponentCount,
    NoiseConfusion,
}

impl Reject {
    pub fn name(self) -> &'static str {
        match self {
            Reject::TopologyCaps => "topology-caps",
            Reject::Embedding => "embedding",
            Reject::TubeRadius => "tube-radius",
            Reject::NoiseFloor => "noise-floor",
            Reject::Separation => "separation",
            Reject::TubeOverlap => "tube-overlap",
            Reject::ComponentCount => "component-count",
            Reject::NoiseConfusion => "noise-confusion",
        }
    }
}

impl std::fmt::Display for Reject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
