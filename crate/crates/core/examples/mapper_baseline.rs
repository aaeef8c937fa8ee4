//! Mapper (PCA lens, cubical cover, DBSCAN) next to the Reeb method.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topobench::baselines::{dbscan_eps, mapper_graph, mapper_nodes, MapperParams};
use topobench::graph::betti;
use topobench::reeb::{screeb, ReebParams};
use topobench::synth::{shape_cloud, Shape};

fn main() -> topobench::Result<()> {
    let params = MapperParams::default();
    for shape in Shape::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cloud = shape_cloud(shape, 400, 0.02, &mut rng)?;
        let nodes = mapper_nodes(&cloud, &params)?;
        let m = mapper_graph(&cloud, &params)?;
        let r = screeb(&cloud, &ReebParams::default())?;
        println!(
            "{:<10} eps {:.4}  mapper nodes {:3} -> betti {}   reeb betti {}",
            shape.name(),
            dbscan_eps(&cloud, params.eps_neighbor, params.eps_factor),
            nodes.len(),
            betti(&m),
            betti(&r)
        );
    }
    Ok(())
}
