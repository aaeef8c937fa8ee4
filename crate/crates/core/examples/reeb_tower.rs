//! A three-level Reeb tower on a noisy circle, written out level by level.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use topobench::graph::betti;
use topobench::reeb::{screeb_tower, ReebParams};
use topobench::PointCloud;

fn main() -> topobench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rows: Vec<[f64; 2]> = (0..500)
        .map(|_| {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            [t.cos() + 0.1 * a, t.sin() + 0.1 * b]
        })
        .collect();
    let cloud = PointCloud::from_rows(&rows)?;
    let params = ReebParams { levels: 3, k_bw_smooth: Some(50), ..ReebParams::default() };
    let tower = screeb_tower(&cloud, &params)?;
    for level in &tower.levels {
        println!(
            "level {}: diameter {:.3}, {} vertices, {} edges, betti {}",
            level.level,
            level.cloud.diameter(),
            level.graph.vertex_count(),
            level.graph.edge_count(),
            betti(&level.graph)
        );
    }
    println!("{}", tower.last().graph.to_json_string());
    Ok(())
}
