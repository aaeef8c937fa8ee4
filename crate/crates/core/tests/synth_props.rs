mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topobench::graph::{betti, reduce};
use topobench::synth::{
    generate_benchmark, generate_sample, sample_seed, sample_topology, GeneratorConfig, Parent, TopologyClass,
};

use common::recheck;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn samples_satisfy_their_contract(seed in any::<u64>(), index in 0usize..1000) {
        let cfg = GeneratorConfig::default();
        let s = generate_sample(&cfg, seed, index).unwrap();
        let m = &s.meta;
        prop_assert_eq!(m.seed, sample_seed(seed, index));
        prop_assert_eq!(s.cloud.dim(), m.dim);
        prop_assert_eq!(s.cloud.len(), m.parents.len());
        prop_assert_eq!(betti(&s.graph), m.betti);
        prop_assert_eq!(betti(&s.reduced), m.betti);
        prop_assert_eq!(m.betti.b0, m.components.len());
        let r = &m.realized;
        prop_assert!(r.noise_scale <= r.free_clearance.unwrap_or(f64::INFINITY) / 6.0 + 1e-12);
        prop_assert!(r.noise_scale >= 1e-3 * cfg.feature_scale * (1.0 - 1e-9));
        for c in &m.components {
            prop_assert!(c.points >= cfg.min_points_per_component);
        }
        for p in &m.parents {
            match *p {
                Parent::Edge(e) => prop_assert!(e < m.latent_edges.len()),
                Parent::Vertex(v) => prop_assert!(v < m.latent_positions.len()),
            }
        }
        if let Err(e) = recheck(&s.cloud, m) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn topology_respects_caps(seed in any::<u64>()) {
        let cfg = GeneratorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(t) = sample_topology(&cfg, &mut rng) {
            let g = &t.graph;
            prop_assert!(g.vertex_count() <= cfg.max_nodes);
            prop_assert!(g.expanded_edges().len() <= cfg.max_edges);
            prop_assert!(g.degrees().iter().all(|&d| d <= cfg.degree_cap));
            prop_assert!(t.components.len() <= cfg.max_components);
        }
    }
}

#[test]
fn identical_seed_identical_samples() {
    let cfg = GeneratorConfig::default();
    let a = generate_benchmark(&cfg, 5, 7).unwrap();
    let b = generate_benchmark(&cfg, 5, 7).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.cloud, y.cloud);
        assert_eq!(x.graph.to_json_string(), y.graph.to_json_string());
        assert_eq!(x.meta, y.meta);
    }
    let c = generate_benchmark(&cfg, 5, 8).unwrap();
    assert!(a.iter().zip(&c).any(|(x, y)| x.cloud != y.cloud));
}

#[test]
fn single_edge_only_config() {
    let text = r#"{"class_probabilities": {"singleton": 0, "single_edge": 1, "tree": 0,
        "single_cycle": 0, "multi_cycle": 0, "hybrid": 0}, "component_probability": 0}"#;
    let cfg = GeneratorConfig::from_json_str(text).unwrap();
    for s in generate_benchmark(&cfg, 6, 3).unwrap() {
        let r = reduce(&s.graph);
        assert_eq!((r.vertex_count(), r.edge_count()), (2, 1));
        assert_eq!(s.meta.components[0].class, TopologyClass::SingleEdge.name());
    }
}

#[test]
fn benchmark_of_200_spans_classes_and_cycle_ranks() {
    let samples = generate_benchmark(&GeneratorConfig::default(), 200, 20260422).unwrap();
    let classes: BTreeSet<&str> =
        samples.iter().flat_map(|s| s.meta.components.iter().map(|c| c.class.as_str())).collect();
    assert_eq!(classes.len(), 6, "{classes:?}");
    let b1: BTreeSet<usize> = samples.iter().map(|s| s.meta.betti.b1).collect();
    assert!(b1.contains(&0));
    assert!(b1.iter().any(|&x| x >= 3), "{b1:?}");
    assert!(samples.iter().any(|s| s.meta.betti.b0 > 1));
}

#[test]
fn bad_config_names_the_field() {
    let err = GeneratorConfig::from_json_str(r#"{"noise_ratio": {"lo": 0.5, "hi": 0.1}}"#).unwrap_err();
    assert!(err.to_string().contains("noise_ratio"), "{err}");
    let err = GeneratorConfig::from_json_str(r#"{"bogus": 1}"#).unwrap_err();
    assert!(err.to_string().contains("bogus"), "{err}");
}
