//! Persistence images of two graphs, printed as coarse character maps.

use topobench::metrics::{edge_length_diagram, persistence_image, GRID};
use topobench::Multigraph;

fn show(title: &str, img: &[f64]) {
    let max = img.iter().copied().fold(0.0, f64::max).max(1e-12);
    println!("{title}");
    for r in (0..GRID).rev() {
        let line: String = (0..GRID)
            .map(|c| match img[r * GRID + c] / max {
                x if x > 0.5 => '#',
                x if x > 0.1 => '+',
                x if x > 0.01 => '.',
                _ => ' ',
            })
            .collect();
        println!("  |{line}|");
    }
}

fn main() -> topobench::Result<()> {
    let theta = Multigraph::from_edge_list(2, &[(0, 1), (0, 1), (0, 1)])?;
    let mut tree = Multigraph::new(5);
    for (v, len) in [(1, 1.0), (2, 0.7), (3, 0.4), (4, 0.2)] {
        tree.add_edge(0, v, len)?;
    }
    for (name, g) in [("theta graph", theta), ("star tree", tree)] {
        let img = persistence_image(&edge_length_diagram(&g, true))?;
        println!("{name}: total mass {:.4}", img.mass());
        show("  H0 (rows: persistence, cols: birth)", img.h0());
        show("  H1", img.h1());
    }
    Ok(())
}
