//! kNN graph and adaptive Gaussian affinities on a small noisy arc.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topobench::geometry::{adaptive_affinity, knn_graph};
use topobench::PointCloud;

fn main() -> topobench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rows: Vec<[f64; 2]> = (0..40)
        .map(|i| {
            let t = i as f64 / 39.0 * std::f64::consts::PI;
            [t.cos() + rng.random_range(-0.02..0.02), t.sin() + rng.random_range(-0.02..0.02)]
        })
        .collect();
    let cloud = PointCloud::from_rows(&rows)?;

    let k = 5;
    let nbrs = knn_graph(&cloud, k, true)?;
    println!("{} points, k = {k}, {} undirected edges", cloud.len(), nbrs.edges().len());
    let w = adaptive_affinity(&cloud, &nbrs, k)?;
    println!("bandwidth range [{:.4}, {:.4}]",
        w.bandwidths().iter().copied().fold(f64::INFINITY, f64::min),
        w.bandwidths().iter().copied().fold(0.0, f64::max));
    for i in [0, 20, 39] {
        let row: Vec<String> = w.row(i).iter().map(|(j, x)| format!("{j}:{x:.3}")).collect();
        println!("row {i:2}: {}", row.join(" "));
    }
    println!("components of the affinity graph: {}", w.components().len());
    Ok(())
}
