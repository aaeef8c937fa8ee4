use super::multigraph::{BettiPair, Edge, Multigraph};
use super::unionfind::UnionFind;

/// Parts ordered by smallest vertex id, each sorted.
pub fn connected_components(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    uf.groups()
}

pub fn betti(g: &Multigraph) -> BettiPair {
    let b0 = connected_components(g).len();
    BettiPair {
        b0,
        b1: g.edge_count() + b0 - g.vertex_count(),
    }
}

/// Contract every maximal chain of degree-2 vertices into one edge whose
/// length is the chain's total. A component that is a bare cycle becomes one
/// vertex (its smallest id) carrying a self-loop.
pub fn reduce(g: &Multigraph) -> Multigraph {
    let n = g.vertex_count();
    let edges = g.expanded_edges();
    let inc = Multigraph::incidence(&edges, n);
    let internal: Vec<bool> = (0..n)
        .map(|v| inc[v].len() == 2 && inc[v].iter().all(|&id| !edges[id].is_loop()))
        .collect();

    let mut used = vec![false; edges.len()];
    let mut out_edges: Vec<(usize, usize, f64)> = Vec::new();

    for s in (0..n).filter(|&v| !internal[v]) {
        for &start in &inc[s] {
            if used[start] {
                continue;
            }
            used[start] = true;
            let mut length = edges[start].length;
            let mut at = edges[start].other(s);
            let mut via = start;
            while internal[at] {
                let next = if inc[at][0] == via { inc[at][1] } else { inc[at][0] };
                used[next] = true;
                length += edges[next].length;
                at = edges[next].other(at);
                via = next;
            }
            out_edges.push((s, at, length));
        }
    }

    let mut keep: Vec<bool> = internal.iter().map(|&i| !i).collect();
    for v in 0..n {
        if !internal[v] || inc[v].iter().all(|&id| used[id]) {
            continue;
        }
        // Bare cycle: every vertex on it is internal; start from its smallest id.
        keep[v] = true;
        let mut length = 0.0;
        let mut via = inc[v][1];
        let mut at = v;
        loop {
            let next = if inc[at][0] == via { inc[at][1] } else { inc[at][0] };
            used[next] = true;
            length += edges[next].length;
            at = edges[next].other(at);
            via = next;
            if at == v {
                break;
            }
        }
        out_edges.push((v, v, length));
    }

    let order: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
    let mut map = vec![usize::MAX; n];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    let positions = order.iter().map(|&v| g.positions()[v].clone()).collect();
    let mut out = Multigraph::from_parts(positions, Vec::new()).expect("no edges");
    for (a, b, length) in out_edges {
        out.push_edge(Edge::new(map[a], map[b], length))
            .expect("reduced edge endpoints are kept vertices");
    }
    out.canonical()
}
