//! Distances between points and segments in any dimension.

use crate::geometry::euclidean;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(&ab, &ab);
    if len2 == 0.0 {
        return euclidean(p, a);
    }
    let t = (dot(&sub(p, a), &ab) / len2).clamp(0.0, 1.0);
    let q: Vec<f64> = a.iter().zip(&ab).map(|(x, d)| x + t * d).collect();
    euclidean(p, &q)
}

pub fn segment_distance(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    const EPS: f64 = 1e-300;
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let (a, e, f) = (dot(&d1, &d1), dot(&d2, &d2), dot(&d2, &r));
    let (s, t);
    if a <= EPS && e <= EPS {
        return euclidean(p1, p2);
    }
    if a <= EPS {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(&d1, &r);
        if e <= EPS {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(&d1, &d2);
            let denom = a * e - b * b;
            let s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            } else {
                t = t0;
                s = s0;
            }
        }
    }
    let x: Vec<f64> = p1.iter().zip(&d1).map(|(p, d)| p + s * d).collect();
    let y: Vec<f64> = p2.iter().zip(&d2).map(|(p, d)| p + t * d).collect();
    euclidean(&x, &y)
}

/// Separation of two graph edges given as endpoint ids. Disjoint edges use
/// the segment distance. Edges sharing one endpoint use the distance from
/// each far endpoint to the other segment, which is small only when the two
/// run nearly parallel. Identical edges give `f64::INFINITY`.
pub fn edge_clearance(pos: &[Vec<f64>], e: (usize, usize), f: (usize, usize)) -> f64 {
    let shared = [e.0 == f.0, e.0 == f.1, e.1 == f.0, e.1 == f.1];
    match shared.iter().filter(|&&s| s).count() {
        0 => segment_distance(&pos[e.0], &pos[e.1], &pos[f.0], &pos[f.1]),
        1 => {
            let far_e = if e.0 == f.0 || e.0 == f.1 { e.1 } else { e.0 };
            let far_f = if f.0 == e.0 || f.0 == e.1 { f.1 } else { f.0 };
            point_segment_distance(&pos[far_e], &pos[f.0], &pos[f.1])
                .min(point_segment_distance(&pos[far_f], &pos[e.0], &pos[e.1]))
        }
        _ => f64::INFINITY,
    }
}

/// Smallest [`edge_clearance`] over all edge pairs.
pub fn min_clearance(pos: &[Vec<f64>], edges: &[(usize, usize)]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            best = best.min(edge_clearance(pos, e, f));
        }
    }
    best
}

/// Smallest distance between segments that share no endpoint.
pub fn min_disjoint_distance(pos: &[Vec<f64>], edges: &[(usize, usize)]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                best = best.min(segment_distance(&pos[e.0], &pos[e.1], &pos[f.0], &pos[f.1]));
            }
        }
    }
    best
}
