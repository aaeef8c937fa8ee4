//! Score recovered graphs against a reference: Wasserstein similarity of
//! edge-length diagrams and approximate graph edit distance.

use topobench::metrics::{compare, edge_length_diagram};
use topobench::Multigraph;

fn main() -> topobench::Result<()> {
    // A Y-shaped tree with arms of length 1, 0.8 and 0.6.
    let mut truth = Multigraph::new(4);
    truth.add_edge(0, 1, 1.0)?;
    truth.add_edge(0, 2, 0.8)?;
    truth.add_edge(0, 3, 0.6)?;

    // A short spur at the branch point makes it degree 4.
    let mut whisker = truth.clone();
    let v = whisker.add_vertex(None);
    whisker.add_edge(0, v, 0.05)?;

    let segment = Multigraph::from_edge_list(2, &[(0, 1)])?;
    let looped = Multigraph::from_edge_list(1, &[(0, 0)])?;

    let d = edge_length_diagram(&truth, true);
    println!("reference diagram: h0 deaths {:?}, {} essential", d.h0_finite, d.h0_essential);
    for (name, g) in [("identical", &truth), ("extra whisker", &whisker), ("segment", &segment), ("loop", &looped)] {
        let c = compare(g, &truth);
        println!(
            "{name:<14} similarity {:.4}  ged {:.0}  (h0 {:.3}, h1 {:.3}, essential {:.3})",
            c.wasserstein_similarity, c.ged, c.distance.h0, c.distance.h1, c.distance.essential
        );
    }
    Ok(())
}
