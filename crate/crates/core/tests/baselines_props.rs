mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topobench::baselines::{dbscan, dbscan_eps, mapper_graph, mapper_nodes, pca_lens, MapperParams, NOISE};
use topobench::graph::{betti, reduce};
use topobench::synth::{shape_cloud, Shape};
use topobench::PointCloud;

use common::component_count;

fn cloud_strategy() -> impl Strategy<Value = PointCloud> {
    (2usize..40, 1usize..4).prop_flat_map(|(n, m)| {
        prop::collection::vec(-5.0f64..5.0, n * m).prop_map(move |v| PointCloud::from_flat(n, m, v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    /// Core points in one cluster iff joined by a chain of core points within eps.
    #[test]
    fn dbscan_clusters_are_core_components(c in cloud_strategy(), eps in 0.1f64..4.0, min_samples in 1usize..6) {
        let n = c.len();
        let labels = dbscan(&c, eps, min_samples);
        let nbr: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| c.distance(i, j) <= eps).collect()).collect();
        let near = |i: usize| nbr[i].iter().copied();
        let core: Vec<bool> = (0..n).map(|i| near(i).count() >= min_samples).collect();
        let core_idx: Vec<usize> = (0..n).filter(|&i| core[i]).collect();
        let pos = |i: usize| core_idx.iter().position(|&x| x == i).unwrap();
        let mut edges = Vec::new();
        for &i in &core_idx {
            for j in near(i) {
                if core[j] && i < j {
                    edges.push((pos(i), pos(j)));
                }
            }
        }
        let clusters: std::collections::BTreeSet<i64> = core_idx.iter().map(|&i| labels[i]).collect();
        prop_assert_eq!(clusters.len(), component_count(core_idx.len(), &edges));
        for i in 0..n {
            if core[i] {
                prop_assert!(labels[i] >= 0);
            } else if near(i).any(|j| core[j]) {
                let best = near(i).filter(|&j| core[j]).map(|j| labels[j]).min().unwrap();
                prop_assert_eq!(labels[i], best);
            } else {
                prop_assert_eq!(labels[i], NOISE);
            }
        }
    }

    #[test]
    fn pca_lens_is_centred_and_uncorrelated(c in cloud_strategy()) {
        let d = c.dim().min(c.len());
        let lens = pca_lens(&c, d, 0).unwrap();
        prop_assert_eq!(lens.shape(), (c.len(), d));
        for k in 0..d {
            prop_assert!(lens.column(k).sum().abs() < 1e-8 * c.len() as f64 * 10.0);
        }
        let g: DMatrix<f64> = lens.transpose() * &lens;
        let scale = g.diagonal().max().max(1.0);
        for a in 0..d {
            for b in 0..d {
                if a != b {
                    prop_assert!(g[(a, b)].abs() < 1e-8 * scale);
                }
            }
            if a + 1 < d {
                prop_assert!(g[(a, a)] >= g[(a + 1, a + 1)] - 1e-8 * scale);
            }
        }
    }

    #[test]
    fn mapper_output_is_reduced_and_covers(c in cloud_strategy(), intervals in 1usize..6) {
        let p = MapperParams { intervals, ..MapperParams::default() };
        let nodes = mapper_nodes(&c, &p).unwrap();
        for m in &nodes {
            prop_assert!(!m.is_empty());
            prop_assert!(m.windows(2).all(|w| w[0] < w[1]));
        }
        let g = mapper_graph(&c, &p).unwrap();
        let r = reduce(&g);
        prop_assert_eq!(betti(&r), betti(&g));
        prop_assert_eq!(r.vertex_count(), g.vertex_count());
    }

    #[test]
    fn dbscan_eps_scales_linearly(c in cloud_strategy(), s in 0.1f64..10.0) {
        let scaled = PointCloud::from_flat(c.len(), c.dim(), c.as_flat().iter().map(|x| x * s).collect()).unwrap();
        let (a, b) = (dbscan_eps(&c, 3, 1.5), dbscan_eps(&scaled, 3, 1.5));
        prop_assert!((a * s - b).abs() <= 1e-9 * (1.0 + b));
    }
}

#[test]
fn mapper_recovers_an_even_segment() {
    let rows: Vec<[f64; 2]> = (0..300).map(|i| [i as f64 / 299.0, 0.0]).collect();
    let c = PointCloud::from_rows(&rows).unwrap();
    let p = MapperParams { max_lens_dim: 1, ..MapperParams::default() };
    let g = mapper_graph(&c, &p).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
}

#[test]
fn mapper_finds_the_loop_of_an_even_circle() {
    let rows: Vec<[f64; 2]> = (0..300)
        .map(|i| {
            let t = i as f64 / 300.0 * std::f64::consts::TAU;
            [t.cos(), t.sin()]
        })
        .collect();
    let g = mapper_graph(&PointCloud::from_rows(&rows).unwrap(), &MapperParams::default()).unwrap();
    let b = betti(&g);
    assert_eq!(b.b0, 1);
    assert!(b.b1 >= 1);
}

#[test]
fn random_segment_fragments_under_fixed_eps() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = shape_cloud(Shape::Segment, 300, 0.0, &mut rng).unwrap();
    let g = mapper_graph(&c, &MapperParams::default()).unwrap();
    assert_eq!(betti(&g).b1, 0);
    assert!(betti(&g).b0 > 1);
}

#[test]
fn mapper_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = shape_cloud(Shape::Circle, 300, 0.02, &mut rng).unwrap();
    let p = MapperParams::default();
    assert_eq!(mapper_graph(&c, &p).unwrap().to_json_string(), mapper_graph(&c, &p).unwrap().to_json_string());
}

#[test]
fn bad_mapper_params_name_the_field() {
    let c = PointCloud::from_rows(&[[0.0], [1.0], [2.0]]).unwrap();
    let err = mapper_graph(&c, &MapperParams { overlap: 1.5, ..MapperParams::default() }).unwrap_err();
    assert!(err.to_string().contains("overlap"), "{err}");
}
