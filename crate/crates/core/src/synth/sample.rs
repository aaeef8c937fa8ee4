use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use super::embed::Embedding;
use super::segments::min_clearance;
use super::Reject;
use crate::geometry::euclidean;

/// Requested difficulty coordinates for one attempt.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Difficulty {
    pub noise_ratio: f64,
    pub separation: f64,
    pub density: f64,
    pub thickness_budget: f64,
}

impl Difficulty {
    pub fn sample<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Self {
        Difficulty {
            noise_ratio: cfg.noise_ratio.sample(rng),
            separation: cfg.separation.sample(rng),
            density: cfg.density.sample(rng),
            thickness_budget: cfg.thickness_budget.sample(rng),
        }
    }
}

/// What a sampled point was drawn around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parent {
    Edge(usize),
    Vertex(usize),
}

/// Geometry actually realised by the sampler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realized {
    pub tube_radius: f64,
    pub noise_scale: f64,
    /// Axis scale factor applied by crowding, per component.
    pub crowding: Vec<f64>,
    /// Post-crowding segment clearance over all components (`None` when no
    /// component has two edges).
    pub clearance: Option<f64>,
    /// `clearance - 2 r`.
    pub free_clearance: Option<f64>,
    pub max_edge_length: f64,
    pub gap: f64,
    pub density_jitter: f64,
}

pub struct Sampled {
    pub points: Vec<Vec<f64>>,
    pub parents: Vec<Parent>,
    pub component_of_point: Vec<usize>,
    pub positions: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize)>,
    pub realized: Realized,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Scale `pos` about its centroid by `f` along `axis`.
fn squeeze(pos: &[Vec<f64>], axis: &[f64], f: f64) -> Vec<Vec<f64>> {
    let d = axis.len();
    let n = pos.len() as f64;
    let c: Vec<f64> = (0..d).map(|k| pos.iter().map(|p| p[k]).sum::<f64>() / n).collect();
    pos.iter()
        .map(|p| {
            let along: f64 = (0..d).map(|k| (p[k] - c[k]) * axis[k]).sum();
            (0..d).map(|k| p[k] - (1.0 - f) * along * axis[k]).collect()
        })
        .collect()
}

/// Shrink a component along its top principal axis by up to `separation`,
/// keeping tubes of radius `r` at least `margin` apart: the smallest factor
/// in `[1 - separation, 1]` meeting that bound, found by bisection.
fn crowd(
    pos: &[Vec<f64>],
    edges: &[(usize, usize)],
    r: f64,
    separation: f64,
    cfg: &GeneratorConfig,
) -> (Vec<Vec<f64>>, f64) {
    if separation <= 0.0 || pos.len() < 2 {
        return (pos.to_vec(), 1.0);
    }
    let d = pos[0].len();
    let n = pos.len() as f64;
    let c: Vec<f64> = (0..d).map(|k| pos.iter().map(|p| p[k]).sum::<f64>() / n).collect();
    let cov = DMatrix::from_fn(d, d, |a, b| {
        pos.iter().map(|p| (p[a] - c[a]) * (p[b] - c[b])).sum::<f64>() / n
    });
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let (l1, l2) = (eig.eigenvalues[order[0]], eig.eigenvalues[order[1]].max(0.0));
    if l1 <= (1.0 + cfg.isotropy_eps) * l2 {
        return (pos.to_vec(), 1.0);
    }
    let axis: Vec<f64> = eig.eigenvectors.column(order[0]).iter().copied().collect();
    let margin = cfg.min_separation_gamma * cfg.feature_scale;
    let ok = |f: f64| min_clearance(&squeeze(pos, &axis, f), edges) - 2.0 * r >= margin;
    let (mut lo, mut hi) = (1.0 - separation, 1.0);
    if ok(lo) {
        return (squeeze(pos, &axis, lo), lo);
    }
    if !ok(hi) {
        return (pos.to_vec(), 1.0);
    }
    for _ in 0..cfg.max_search_iterations {
        if hi - lo <= cfg.search_tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (squeeze(pos, &axis, hi), hi)
}

fn gaussian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

fn ball<R: Rng + ?Sized>(d: usize, r: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let g = gaussian(d, rng);
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            let rad = r * rng.random::<f64>().powf(1.0 / d as f64);
            return g.iter().map(|x| x * rad / n).collect();
        }
    }
}

/// Uniform point in the `(d-1)`-ball of radius `r` orthogonal to unit `axis`.
fn disc<R: Rng + ?Sized>(axis: &[f64], r: f64, rng: &mut R) -> Vec<f64> {
    let d = axis.len();
    loop {
        let g = gaussian(d, rng);
        let along: f64 = g.iter().zip(axis).map(|(x, a)| x * a).sum();
        let g: Vec<f64> = g.iter().zip(axis).map(|(x, a)| x - along * a).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            let rad = r * rng.random::<f64>().powf(1.0 / (d - 1) as f64);
            return g.iter().map(|x| x * rad / n).collect();
        }
    }
}

fn on_edge<R: Rng + ?Sized>(a: &[f64], b: &[f64], t: f64, r: f64, rng: &mut R) -> Vec<f64> {
    let len = euclidean(a, b);
    let axis: Vec<f64> = a.iter().zip(b).map(|(x, y)| (y - x) / len.max(1e-300)).collect();
    let off = if r > 0.0 && len > 0.0 { disc(&axis, r, rng) } else { vec![0.0; a.len()] };
    a.iter()
        .zip(b)
        .zip(&off)
        .map(|((x, y), o)| x + t * (y - x) + o)
        .collect()
}

/// Thicken the embedded graph into solid tubes and draw the noisy cloud:
/// tube radius from the thickness budget, crowding along each component's
/// top principal axis, noise capped by the post-crowding clearance, edge
/// and junction samples, then truncated isotropic Gaussian noise.
pub fn sample_point_cloud<R: Rng + ?Sized>(
    embedding: &Embedding,
    difficulty: &Difficulty,
    cfg: &GeneratorConfig,
    rng: &mut R,
) -> Result<Sampled, Reject> {
    let f = cfg.feature_scale;
    let clear = embedding.clearance();
    let mut r_max = 0.25 * f;
    for (c, h) in clear.iter().zip(&embedding.hole_radius) {
        r_max = r_max.min(c / 4.0).min(cfg.cycle_hole_cap_fraction * h);
    }
    let r_min = cfg.min_tube_radius_ratio * embedding.max_edge_length();
    let r = (difficulty.thickness_budget * r_max).max(r_min);
    if r > r_max {
        return Err(Reject::TubeRadius);
    }

    let mut crowded = embedding.clone();
    let mut factors = Vec::new();
    for (k, local) in embedding.local.iter().enumerate() {
        let (p, fac) = crowd(local, &embedding.edges[k], r, difficulty.separation, cfg);
        crowded.local[k] = p;
        factors.push(fac);
    }
    let post = crowded.clearance().into_iter().fold(f64::INFINITY, f64::min);
    let free = post - 2.0 * r;
    let sigma = (difficulty.noise_ratio * f).min(free / cfg.noise_safety);
    if !(sigma >= 1e-3 * f) {
        return Err(Reject::NoiseFloor);
    }

    let positions = crowded.positions(f);
    let d = embedding.dim;
    let mut edges = Vec::new();
    let mut comp_of_vertex = Vec::new();
    let mut offset = 0;
    for (k, es) in crowded.edges.iter().enumerate() {
        edges.extend(es.iter().map(|&(a, b)| (a + offset, b + offset)));
        comp_of_vertex.extend(std::iter::repeat_n(k, crowded.local[k].len()));
        offset += crowded.local[k].len();
    }
    let nv = positions.len();
    let mut degree = vec![0usize; nv];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }

    let dj = cfg.density_jitter.sample(rng);
    let rho = difficulty.density;
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut parents = Vec::new();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        let len = euclidean(&positions[a], &positions[b]);
        let scale = 1.0 + if dj > 0.0 { rng.random_range(-dj..=dj) } else { 0.0 };
        let count = ((rho * scale * len).ceil() as usize).max(cfg.min_points_per_edge);
        for k in 0..count {
            let t = match k {
                0 => 0.0,
                1 => 1.0,
                _ => rng.random::<f64>(),
            };
            points.push(on_edge(&positions[a], &positions[b], t, r, rng));
            parents.push(Parent::Edge(ei));
        }
    }
    for v in 0..nv {
        let extra = if degree[v] >= 3 {
            (rho * r).ceil() as usize
        } else if degree[v] == 0 {
            ((rho * r).ceil() as usize).max(cfg.min_points_per_component)
        } else {
            0
        };
        for _ in 0..extra {
            let o = ball(d, r, rng);
            points.push(positions[v].iter().zip(&o).map(|(x, y)| x + y).collect());
            parents.push(Parent::Vertex(v));
        }
    }
    let comp_of = |p: &Parent| match *p {
        Parent::Edge(e) => comp_of_vertex[edges[e].0],
        Parent::Vertex(v) => comp_of_vertex[v],
    };
    let ncomp = embedding.local.len();
    let mut counts = vec![0usize; ncomp];
    for p in &parents {
        counts[comp_of(p)] += 1;
    }
    for (k, &have) in counts.iter().enumerate() {
        let own: Vec<usize> = (0..edges.len()).filter(|&e| comp_of_vertex[edges[e].0] == k).collect();
        if own.is_empty() {
            continue;
        }
        let lens: Vec<f64> = own.iter().map(|&e| euclidean(&positions[edges[e].0], &positions[edges[e].1])).collect();
        let total: f64 = lens.iter().sum();
        for _ in have..cfg.min_points_per_component {
            let mut u = rng.random::<f64>() * total;
            let mut pick = own[own.len() - 1];
            for (&e, &l) in own.iter().zip(&lens) {
                if u < l {
                    pick = e;
                    break;
                }
                u -= l;
            }
            let (a, b) = edges[pick];
            let t = rng.random::<f64>();
            points.push(on_edge(&positions[a], &positions[b], t, r, rng));
            parents.push(Parent::Edge(pick));
        }
    }
    for p in &mut points {
        loop {
            let g = gaussian(d, rng);
            if g.iter().map(|x| x * x).sum::<f64>().sqrt() <= cfg.noise_safety {
                for (x, n) in p.iter_mut().zip(&g) {
                    *x += sigma * n;
                }
                break;
            }
        }
    }
    let component_of_point = parents.iter().map(comp_of).collect();
    let longest = crowded.max_edge_length();
    Ok(Sampled {
        points,
        parents,
        component_of_point,
        positions,
        edges,
        realized: Realized {
            tube_radius: r,
            noise_scale: sigma,
            crowding: factors,
            clearance: finite(post),
            free_clearance: finite(free),
            max_edge_length: longest,
            gap: embedding.gap_ratio * if longest > 0.0 { longest } else { f },
            density_jitter: dj,
        },
    })
}
