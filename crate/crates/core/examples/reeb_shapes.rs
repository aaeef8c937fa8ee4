//! Reduced Reeb graphs of the canonical shapes, clean and noisy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topobench::graph::betti;
use topobench::reeb::{screeb, ReebParams};
use topobench::synth::{shape_cloud, Shape};

fn main() -> topobench::Result<()> {
    let params = ReebParams::default();
    for shape in Shape::ALL {
        let truth = shape.skeleton();
        println!("{:<10} truth betti {} degrees {:?}", shape.name(), betti(&truth), truth.degree_sequence());
        for noise in [0.0, 0.05] {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let cloud = shape_cloud(shape, 400, noise, &mut rng)?;
            let g = screeb(&cloud, &params)?;
            println!("  noise {noise:.2}: betti {} degrees {:?}", betti(&g), g.degree_sequence());
        }
    }
    Ok(())
}
