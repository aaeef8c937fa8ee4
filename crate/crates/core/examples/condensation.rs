//! Diffusion condensation pulls a noisy ring toward its core curve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use topobench::geometry::condense_with_bandwidth;
use topobench::PointCloud;

/// Mean and spread of the distance from the origin.
fn radial(c: &PointCloud) -> (f64, f64) {
    let r: Vec<f64> = c.rows().map(|p| p[0].hypot(p[1])).collect();
    let m = r.iter().sum::<f64>() / r.len() as f64;
    let v = r.iter().map(|x| (x - m).powi(2)).sum::<f64>() / r.len() as f64;
    (m, v.sqrt())
}

fn main() -> topobench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows: Vec<[f64; 2]> = (0..400)
        .map(|_| {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            [t.cos() + 0.1 * a, t.sin() + 0.1 * b]
        })
        .collect();
    let mut cloud = PointCloud::from_rows(&rows)?;
    for level in 0..=3 {
        let (m, s) = radial(&cloud);
        println!("level {level}: radius {m:.4} +- {s:.4}, diameter {:.4}", cloud.diameter());
        cloud = condense_with_bandwidth(&cloud, 80, 50, 1)?;
    }
    Ok(())
}
