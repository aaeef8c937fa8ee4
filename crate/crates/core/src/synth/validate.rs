use super::config::GeneratorConfig;
use super::sample::{Parent, Sampled};
use super::segments::{point_segment_distance, segment_distance};
use super::Reject;
use crate::geometry::euclidean;

fn min_between(points: &[Vec<f64>], a: &[usize], b: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for &i in a {
        for &j in b {
            best = best.min(euclidean(&points[i], &points[j]));
        }
    }
    best
}

/// Longest edge of the Euclidean minimum spanning tree over `members`.
fn mst_bottleneck(points: &[Vec<f64>], members: &[usize]) -> f64 {
    let n = members.len();
    if n < 2 {
        return 0.0;
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[0] = 0.0;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for i in 0..n {
            if !done[i] && (u == usize::MAX || dist[i] < dist[u]) {
                u = i;
            }
        }
        done[u] = true;
        worst = worst.max(dist[u]);
        for i in 0..n {
            if !done[i] {
                let d = euclidean(&points[members[u]], &points[members[i]]);
                if d < dist[i] {
                    dist[i] = d;
                }
            }
        }
    }
    worst
}

/// Acceptance checks on a sampled cloud: separated components, disjoint
/// tubes, a connectivity scale below the inter-component gap, and every
/// point nearer its own edge than any edge it does not touch.
pub fn validate(s: &Sampled, cfg: &GeneratorConfig) -> Result<(), Reject> {
    let ncomp = s.component_of_point.iter().copied().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); ncomp];
    for (i, &c) in s.component_of_point.iter().enumerate() {
        members[c].push(i);
    }
    let sigma = s.realized.noise_scale;
    let r = s.realized.tube_radius;

    let mut inter = f64::INFINITY;
    for a in 0..ncomp {
        for b in a + 1..ncomp {
            inter = inter.min(min_between(&s.points, &members[a], &members[b]));
        }
    }
    if inter < cfg.component_safety * sigma {
        return Err(Reject::Separation);
    }

    let pos = &s.positions;
    for (i, &(a, b)) in s.edges.iter().enumerate() {
        for &(c, d) in &s.edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segment_distance(&pos[a], &pos[b], &pos[c], &pos[d]) < 2.0 * r {
                return Err(Reject::TubeOverlap);
            }
        }
    }

    if ncomp > 1 {
        let h = members.iter().map(|m| mst_bottleneck(&s.points, m)).fold(0.0, f64::max);
        if h >= inter {
            return Err(Reject::ComponentCount);
        }
    }

    let margin = cfg.min_separation_gamma * cfg.feature_scale;
    for (p, parent) in s.points.iter().zip(&s.parents) {
        let (own, touches): (f64, Box<dyn Fn(usize, usize) -> bool>) = match *parent {
            Parent::Edge(e) => {
                let (a, b) = s.edges[e];
                (
                    point_segment_distance(p, &pos[a], &pos[b]),
                    Box::new(move |u, v| u == a || u == b || v == a || v == b),
                )
            }
            Parent::Vertex(v) => (euclidean(p, &pos[v]), Box::new(move |a, b| a == v || b == v)),
        };
        for &(a, b) in &s.edges {
            if touches(a, b) {
                continue;
            }
            if point_segment_distance(p, &pos[a], &pos[b]) + margin < own {
                return Err(Reject::NoiseConfusion);
            }
        }
    }
    Ok(())
}
