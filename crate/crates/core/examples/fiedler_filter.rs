//! Diffusion operator and its Fiedler filter on a dumbbell: two lobes joined
//! by a thin neck. The filter's sign separates the lobes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topobench::geometry::{adaptive_affinity, diffusion_operator, fiedler_filter, knn_graph};
use topobench::PointCloud;

fn main() -> topobench::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut rows: Vec<[f64; 2]> = (0..200)
        .map(|i| {
            let cx = if i < 100 { -1.0 } else { 1.0 };
            [cx + rng.random_range(-0.6..0.6), rng.random_range(-0.4..0.4)]
        })
        .collect();
    rows.extend((0..20).map(|i| [-0.4 + 0.8 * i as f64 / 19.0, 0.0]));
    let cloud = PointCloud::from_rows(&rows)?;
    let nbrs = knn_graph(&cloud, 10, true)?;
    let w = adaptive_affinity(&cloud, &nbrs, 10)?;
    let mut op = diffusion_operator(&w)?;
    let spectrum = op.compute_spectrum(4)?;
    println!("leading |eigenvalues|: {:?}", spectrum.values.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>());

    let all: Vec<usize> = (0..cloud.len()).collect();
    let f = fiedler_filter(&op, &all)?;
    let left_pos = (0..100).filter(|&i| f[i] > 0.0).count();
    let right_pos = (100..200).filter(|&i| f[i] > 0.0).count();
    println!("positive filter values: {left_pos}/100 on the left lobe, {right_pos}/100 on the right");
    Ok(())
}
