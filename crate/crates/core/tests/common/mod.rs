//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use topobench::geometry::{euclidean, AffinityMatrix};
use topobench::metrics::PersistenceDiagram;
use topobench::synth::{Parent, SampleMeta};
use topobench::{Multigraph, PointCloud};

/// Union-find free component count by repeated graph search.
pub fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// `(b0, b1)` from a plain edge list with multiplicity already expanded.
pub fn betti_of(n: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let b0 = component_count(n, edges);
    (b0, edges.len() + b0 - n)
}

pub fn expanded(g: &Multigraph) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for e in g.edges() {
        for _ in 0..e.multiplicity {
            out.push((e.u, e.v, e.length));
        }
    }
    out
}

/// Diagram by recomputing Betti numbers after every distinct edge weight.
pub struct SweepDiagram {
    pub deaths: Vec<f64>,
    pub births: Vec<f64>,
    pub essential: usize,
}

pub fn sweep_diagram(g: &Multigraph, scale: f64) -> SweepDiagram {
    let n = g.vertex_count();
    let es = expanded(g);
    let mut weights: Vec<f64> = es.iter().map(|e| e.2).collect();
    weights.sort_by(f64::total_cmp);
    weights.dedup();
    let (mut b0, mut b1) = (n, 0);
    let mut out = SweepDiagram {
        deaths: Vec::new(),
        births: Vec::new(),
        essential: n,
    };
    for &w in &weights {
        let sub: Vec<(usize, usize)> = es.iter().filter(|e| e.2 <= w).map(|e| (e.0, e.1)).collect();
        let (c0, c1) = betti_of(n, &sub);
        for _ in c0..b0 {
            out.deaths.push(w / scale);
        }
        for _ in b1..c1 {
            out.births.push(w / scale);
        }
        b0 = c0;
        b1 = c1;
    }
    out.essential = b0;
    out
}

/// L∞ Wasserstein-1 by enumerating every partial matching.
pub fn brute_matching(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if i == a.len() {
            let rest: f64 = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(p, _)| (p.1 - p.0) / 2.0)
                .sum();
            *best = best.min(acc + rest);
            return;
        }
        let p = a[i];
        go(i + 1, a, b, used, acc + (p.1 - p.0) / 2.0, best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = (p.0 - b[j].0).abs().max((p.1 - b[j].1).abs());
                go(i + 1, a, b, used, acc + c, best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}

/// Reference total distance between two normalized diagrams.
pub fn brute_wasserstein(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let h0 = |d: &PersistenceDiagram| d.h0_finite.iter().map(|&x| (0.0, x)).collect::<Vec<_>>();
    let h1 = |d: &PersistenceDiagram| d.h1_essential.iter().map(|&x| (x, 1.0)).collect::<Vec<_>>();
    brute_matching(&h0(d1), &h0(d2))
        + brute_matching(&h1(d1), &h1(d2))
        + d1.h0_essential.abs_diff(d2.h0_essential) as f64 / 2.0
}

pub fn random_diagram<R: Rng>(rng: &mut R, max_bars: usize) -> PersistenceDiagram {
    let mut h0: Vec<f64> = (0..rng.random_range(0..=max_bars)).map(|_| rng.random::<f64>()).collect();
    let mut h1: Vec<f64> = (0..rng.random_range(0..=max_bars)).map(|_| rng.random::<f64>()).collect();
    h0.sort_by(f64::total_cmp);
    h1.sort_by(f64::total_cmp);
    PersistenceDiagram {
        h0_finite: h0,
        h0_essential: rng.random_range(0..4),
        h1_essential: h1,
        normalized: true,
        scale: 1.0,
    }
}

/// Multiplicity matrix including self-loops on the diagonal.
fn mult_matrix(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for e in g.edges() {
        m[e.u][e.v] += e.multiplicity;
        if e.u != e.v {
            m[e.v][e.u] += e.multiplicity;
        }
    }
    m
}

/// Exact unit-cost edit distance: every partial injective vertex map, with
/// unmatched vertices deleted or inserted and edge multiplicities patched.
pub fn exact_ged(g1: &Multigraph, g2: &Multigraph) -> usize {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let (m1, m2) = (mult_matrix(g1), mult_matrix(g2));
    let e2_total: usize = g2.edges().iter().map(|e| e.multiplicity).sum();
    let mut best = usize::MAX;
    let mut map = vec![None; n1];
    fn rec(
        i: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        n2: usize,
        eval: &dyn Fn(&[Option<usize>]) -> usize,
        best: &mut usize,
    ) {
        if i == map.len() {
            *best = (*best).min(eval(map));
            return;
        }
        map[i] = None;
        rec(i + 1, map, used, n2, eval, best);
        for t in 0..n2 {
            if !used[t] {
                used[t] = true;
                map[i] = Some(t);
                rec(i + 1, map, used, n2, eval, best);
                used[t] = false;
            }
        }
        map[i] = None;
    }
    let eval = |map: &[Option<usize>]| -> usize {
        let matched = map.iter().filter(|m| m.is_some()).count();
        let mut cost = (n1 - matched) + (n2 - matched);
        let mut covered = 0usize;
        for a in 0..n1 {
            for b in a..n1 {
                let here = m1[a][b];
                let there = match (map[a], map[b]) {
                    (Some(x), Some(y)) => m2[x][y],
                    _ => 0,
                };
                cost += here.abs_diff(there);
                covered += there;
            }
        }
        cost + (e2_total - covered)
    };
    rec(0, &mut map, &mut vec![false; n2], n2, &eval, &mut best);
    best
}

/// Random multigraph with loops and parallel edges on small integer lengths.
pub fn random_multigraph<R: Rng>(rng: &mut R, max_v: usize, max_e: usize) -> Multigraph {
    let n = rng.random_range(1..=max_v);
    let mut g = Multigraph::new(n);
    for _ in 0..rng.random_range(0..=max_e) {
        let u = rng.random_range(0..n);
        let v = if rng.random_bool(0.15) { u } else { rng.random_range(0..n) };
        let len = if rng.random_bool(0.5) {
            rng.random_range(1..5) as f64 * 0.5
        } else {
            rng.random_range(0.01..3.0)
        };
        g.add_edge(u, v, len).unwrap();
    }
    g
}

/// Connected random affinity graph: a random spanning tree plus extra edges.
pub fn random_affinity<R: Rng>(rng: &mut R, n: usize) -> AffinityMatrix {
    let mut w = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        w[(i, i)] = 1.0;
    }
    for i in 1..n {
        let j = rng.random_range(0..i);
        let x = rng.random_range(0.05..1.0);
        w[(i, j)] = x;
        w[(j, i)] = x;
    }
    for _ in 0..rng.random_range(0..=2 * n) {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i != j {
            let x = rng.random_range(0.05..1.0);
            w[(i, j)] = x;
            w[(j, i)] = x;
        }
    }
    AffinityMatrix::from_dense(&w).unwrap()
}

/// Right eigenvector of `D^-1 W` for the second-largest |eigenvalue|, via a
/// dense decomposition of the symmetric conjugate; also returns the gap
/// between the second and third magnitudes.
pub fn dense_fiedler(w: &DMatrix<f64>) -> (Vec<f64>, f64) {
    let n = w.nrows();
    let d: Vec<f64> = (0..n).map(|i| w.row(i).sum()).collect();
    let s = DMatrix::from_fn(n, n, |i, j| w[(i, j)] / (d[i] * d[j]).sqrt());
    let eig = SymmetricEigen::new(s);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let v = eig.eigenvectors.column(idx[1]);
    let gap = if n > 2 {
        eig.eigenvalues[idx[1]].abs() - eig.eigenvalues[idx[2]].abs()
    } else {
        1.0
    };
    ((0..n).map(|i| v[i] / d[i].sqrt()).collect(), gap)
}

pub fn abs_cos(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (na * nb)).abs()
}

fn point_segment(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let ap: Vec<f64> = a.iter().zip(p).map(|(x, y)| y - x).collect();
    let l2: f64 = ab.iter().map(|x| x * x).sum();
    let t = if l2 > 0.0 {
        (ap.iter().zip(&ab).map(|(x, y)| x * y).sum::<f64>() / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q: Vec<f64> = a.iter().zip(&ab).map(|(x, d)| x + t * d).collect();
    euclidean(p, &q)
}

/// Segment distance by dense sampling plus endpoint projections; an upper
/// bound that is tight to `1/steps` of the segment lengths.
fn segment_gap(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
    let steps = 400;
    let mut best = point_segment(a, c, d)
        .min(point_segment(b, c, d))
        .min(point_segment(c, a, b))
        .min(point_segment(d, a, b));
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        let p: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
        best = best.min(point_segment(&p, c, d));
    }
    best
}

/// Re-check an accepted sample from its saved cloud and metadata only.
/// Returns the first violated constraint.
pub fn recheck(cloud: &PointCloud, meta: &SampleMeta) -> Result<(), String> {
    let sigma = meta.realized.noise_scale;
    let r = meta.realized.tube_radius;
    let pos = &meta.latent_positions;
    let edges = &meta.latent_edges;
    let comp_of_vertex: Vec<usize> = (0..pos.len())
        .map(|v| {
            meta.components
                .iter()
                .position(|c| v >= c.first_vertex && v < c.first_vertex + c.vertex_count)
                .unwrap()
        })
        .collect();
    let comp_of_point: Vec<usize> = meta
        .parents
        .iter()
        .map(|p| match *p {
            Parent::Edge(e) => comp_of_vertex[edges[e].0],
            Parent::Vertex(v) => comp_of_vertex[v],
        })
        .collect();
    let n = cloud.len();
    if meta.parents.len() != n {
        return Err("parent count".into());
    }
    for (i, p) in meta.parents.iter().enumerate() {
        let d = match *p {
            Parent::Edge(e) => point_segment(cloud.row(i), &pos[edges[e].0], &pos[edges[e].1]),
            Parent::Vertex(v) => euclidean(cloud.row(i), &pos[v]),
        };
        if d > r + 6.0 * sigma + 1e-9 {
            return Err(format!("point {i} is {d} from its parent"));
        }
    }
    let mut inter = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            if comp_of_point[i] != comp_of_point[j] {
                inter = inter.min(cloud.distance(i, j));
            }
        }
    }
    if inter < 6.0 * sigma {
        return Err("separation".into());
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if [a, b].iter().any(|x| *x == c || *x == d) {
                continue;
            }
            if segment_gap(&pos[a], &pos[b], &pos[c], &pos[d]) < 2.0 * r - 1e-9 {
                return Err("tube-overlap".into());
            }
        }
    }
    let ncomp = meta.components.len();
    if ncomp > 1 {
        // Single linkage below the inter-component gap must give exactly the
        // sampled components.
        let mut links = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if cloud.distance(i, j) < inter {
                    links.push((i, j));
                }
            }
        }
        if component_count(n, &links) != ncomp {
            return Err("component-count".into());
        }
    }
    for (i, p) in meta.parents.iter().enumerate() {
        let x = cloud.row(i);
        let (own, touch): (f64, Vec<usize>) = match *p {
            Parent::Edge(e) => (point_segment(x, &pos[edges[e].0], &pos[edges[e].1]), vec![edges[e].0, edges[e].1]),
            Parent::Vertex(v) => (euclidean(x, &pos[v]), vec![v]),
        };
        for &(a, b) in edges {
            if touch.contains(&a) || touch.contains(&b) {
                continue;
            }
            if point_segment(x, &pos[a], &pos[b]) + 0.01 < own {
                return Err(format!("noise-confusion at point {i}"));
            }
        }
    }
    Ok(())
}

pub fn dir_bytes(root: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(root).unwrap().display().to_string();
                out.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}
