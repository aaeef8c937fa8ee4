//! Build a multigraph, contract its degree-2 chains and round-trip the
//! canonical JSON.

use topobench::graph::{betti, reduce};
use topobench::Multigraph;

fn main() -> topobench::Result<()> {
    // A ring of six with a two-edge tail and a self-loop at the tail's end.
    let mut g = Multigraph::from_edge_list(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 7)])?;
    g.add_edge(7, 7, 0.5)?;
    g.add_vertex(None);
    println!("input: {} vertices, {} edges, betti {}, degrees {:?}",
        g.vertex_count(), g.edge_count(), betti(&g), g.degree_sequence());

    let r = reduce(&g);
    println!("reduced: {} vertices, {} edges, betti {}, degrees {:?}, total length {}",
        r.vertex_count(), r.edge_count(), betti(&r), r.degree_sequence(), r.total_length());

    let text = r.to_json_string();
    print!("{text}");
    let back = Multigraph::from_json_str(&text)?;
    assert_eq!(back.to_json_string(), text);
    Ok(())
}
