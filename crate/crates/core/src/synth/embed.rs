use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use super::segments::{edge_clearance, min_clearance, point_segment_distance};
use super::topology::{plan_edges, Anchor, ComponentPlan, Piece, SampledTopology};
use super::Reject;

/// Per-sample embedding knobs drawn once per attempt.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedKnobs {
    pub edge_jitter: f64,
    pub branch_angle_spread: f64,
    pub gap_ratio: f64,
}

impl EmbedKnobs {
    pub fn sample<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Self {
        EmbedKnobs {
            edge_jitter: cfg.edge_jitter.sample(rng),
            branch_angle_spread: cfg.branch_angle_spread.sample(rng),
            gap_ratio: cfg.gap_ratio.sample(rng),
        }
    }
}

/// Component layouts in `R^d`, each centred at the origin, and the direction
/// along which they are laid out.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub dim: usize,
    /// Local vertex positions per component (index `v - plan.offset`).
    pub local: Vec<Vec<Vec<f64>>>,
    /// Local edges per component.
    pub edges: Vec<Vec<(usize, usize)>>,
    /// Smallest cycle-hole radius per component (infinite without cycles).
    pub hole_radius: Vec<f64>,
    pub direction: Vec<f64>,
    pub gap_ratio: f64,
}

impl Embedding {
    pub fn max_edge_length(&self) -> f64 {
        self.local
            .iter()
            .zip(&self.edges)
            .flat_map(|(p, es)| es.iter().map(move |&(a, b)| crate::geometry::euclidean(&p[a], &p[b])))
            .fold(0.0, f64::max)
    }

    /// Segment clearance per component (infinite with fewer than two edges).
    pub fn clearance(&self) -> Vec<f64> {
        self.local
            .iter()
            .zip(&self.edges)
            .map(|(p, e)| min_clearance(p, e))
            .collect()
    }

    /// Global vertex positions: components translated along `direction` so
    /// that consecutive projections are `gap_ratio ×` the longest edge apart.
    pub fn positions(&self, feature_scale: f64) -> Vec<Vec<f64>> {
        let longest = self.max_edge_length();
        let gap = self.gap_ratio * if longest > 0.0 { longest } else { feature_scale };
        let proj = |p: &[f64]| -> f64 { p.iter().zip(&self.direction).map(|(a, b)| a * b).sum() };
        let mut out = Vec::new();
        let mut frontier = f64::NEG_INFINITY;
        for comp in &self.local {
            let lo = comp.iter().map(|p| proj(p)).fold(f64::INFINITY, f64::min);
            let hi = comp.iter().map(|p| proj(p)).fold(f64::NEG_INFINITY, f64::max);
            let shift = if frontier.is_finite() { frontier + gap - lo } else { 0.0 };
            for p in comp {
                out.push(p.iter().zip(&self.direction).map(|(x, u)| x + shift * u).collect());
            }
            frontier = hi + shift;
        }
        out
    }
}

fn rotate(u: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * u[0] - s * u[1], s * u[0] + c * u[1]]
}

fn unit(v: [f64; 2]) -> Option<[f64; 2]> {
    let n = v[0].hypot(v[1]);
    (n > 1e-12).then(|| [v[0] / n, v[1] / n])
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> [f64; 2] {
    let a = rng.random_range(0.0..TAU);
    [a.cos(), a.sin()]
}

struct Layout<'a, R: Rng + ?Sized> {
    cfg: &'a GeneratorConfig,
    knobs: EmbedKnobs,
    rng: &'a mut R,
    offset: usize,
    pos: Vec<Option<[f64; 2]>>,
    /// Point each vertex grows away from.
    origin: Vec<Option<[f64; 2]>>,
    edge_center: HashMap<(usize, usize), [f64; 2]>,
    edges: Vec<(usize, usize)>,
    cycles: Vec<Vec<usize>>,
}

impl<R: Rng + ?Sized> Layout<'_, R> {
    fn step(&mut self) -> f64 {
        let j = self.knobs.edge_jitter;
        self.cfg.feature_scale * (1.0 + self.rng.random_range(-j..=j))
    }

    fn radial(&mut self) -> f64 {
        let j = self.knobs.edge_jitter;
        1.0 + self.rng.random_range(-j..=j) / 2.0
    }

    fn at(&self, v: usize) -> [f64; 2] {
        self.pos[v - self.offset].expect("anchor vertices are placed first")
    }

    fn outward(&mut self, v: usize) -> [f64; 2] {
        match self.origin[v - self.offset] {
            Some(o) => unit([self.at(v)[0] - o[0], self.at(v)[1] - o[1]])
                .unwrap_or_else(|| random_unit(self.rng)),
            None => random_unit(self.rng),
        }
    }

    fn ekey(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    /// Candidate positions for a piece's new vertices on attempt `attempt`.
    fn propose(&mut self, piece: &Piece, attempt: usize) -> Vec<(usize, [f64; 2])> {
        let wide = attempt * 2 >= self.cfg.max_search_iterations;
        let spread = if wide { PI } else { self.knobs.branch_angle_spread / 2.0 };
        match piece {
            Piece::Root(v) => vec![(*v, [0.0, 0.0])],
            Piece::Cycle { anchor, vertices } => {
                let l = vertices.len();
                let side = self.cfg.feature_scale;
                let radius = side / (2.0 * (PI / l as f64).sin());
                let orient = if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
                let (center, start, fixed) = match *anchor {
                    Anchor::Free => ([0.0, 0.0], self.rng.random_range(0.0..TAU), 0),
                    Anchor::Vertex(v) => {
                        let u = self.outward(v);
                        let theta = self.rng.random_range(-spread..=spread);
                        let u = rotate(u, theta);
                        let p = self.at(v);
                        let c = [p[0] + radius * u[0], p[1] + radius * u[1]];
                        (c, (p[1] - c[1]).atan2(p[0] - c[0]), 1)
                    }
                    Anchor::Edge(a, b) => {
                        let (pa, pb) = (self.at(a), self.at(b));
                        let side = (pb[0] - pa[0]).hypot(pb[1] - pa[1]);
                        let radius = side / (2.0 * (PI / l as f64).sin());
                        let mid = [(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0];
                        let mut n = [-(pb[1] - pa[1]) / side, (pb[0] - pa[0]) / side];
                        if let Some(c) = self.edge_center.get(&Self::ekey(a, b)) {
                            if (mid[0] - c[0]) * n[0] + (mid[1] - c[1]) * n[1] < 0.0 {
                                n = [-n[0], -n[1]];
                            }
                        }
                        let apothem = radius * (PI / l as f64).cos();
                        let c = [mid[0] + apothem * n[0], mid[1] + apothem * n[1]];
                        let (sa, sb) = (
                            (pa[1] - c[1]).atan2(pa[0] - c[0]),
                            (pb[1] - c[1]).atan2(pb[0] - c[0]),
                        );
                        let mut delta = sb - sa;
                        while delta > PI {
                            delta -= TAU;
                        }
                        while delta < -PI {
                            delta += TAU;
                        }
                        let orient = delta.signum();
                        let mut out = Vec::new();
                        for (k, &v) in vertices.iter().enumerate().skip(2) {
                            let ang = sa + orient * TAU * k as f64 / l as f64;
                            let r = radius * self.radial();
                            out.push((v, [c[0] + r * ang.cos(), c[1] + r * ang.sin()]));
                        }
                        return out;
                    }
                };
                let mut out = Vec::new();
                for (k, &v) in vertices.iter().enumerate().skip(fixed) {
                    let ang = start + orient * TAU * k as f64 / l as f64;
                    let r = radius * self.radial();
                    out.push((v, [center[0] + r * ang.cos(), center[1] + r * ang.sin()]));
                }
                out
            }
            Piece::Path { from, vertices, .. } => {
                let mut dir = rotate(self.outward(*from), self.rng.random_range(-spread..=spread));
                let mut at = self.at(*from);
                let mut out = Vec::new();
                for &v in vertices {
                    let s = self.step();
                    at = [at[0] + s * dir[0], at[1] + s * dir[1]];
                    out.push((v, at));
                    let turn = self.knobs.branch_angle_spread / 4.0;
                    dir = rotate(dir, self.rng.random_range(-turn..=turn));
                }
                out
            }
        }
    }

    fn piece_edges(piece: &Piece) -> Vec<(usize, usize)> {
        plan_edges(std::slice::from_ref(piece))
    }

    /// Clearance between the candidate piece's edges and everything placed.
    fn score(&self, new: &[(usize, [f64; 2])], new_edges: &[(usize, usize)]) -> f64 {
        let n = self.pos.len();
        let mut pos: Vec<Vec<f64>> = (0..n)
            .map(|i| self.pos[i].map(|p| p.to_vec()).unwrap_or_default())
            .collect();
        for &(v, p) in new {
            pos[v - self.offset] = p.to_vec();
        }
        let local = |e: (usize, usize)| (e.0 - self.offset, e.1 - self.offset);
        let mut best = f64::INFINITY;
        for (i, &e) in new_edges.iter().enumerate() {
            for &f in self.edges.iter().chain(&new_edges[i + 1..]) {
                best = best.min(edge_clearance(&pos, local(e), local(f)));
            }
        }
        best
    }

    fn place(&mut self, piece: &Piece) -> Result<(), Reject> {
        let new_edges = Self::piece_edges(piece);
        let target = self.cfg.feature_scale / self.cfg.separation_to_feature_ratio;
        let mut best: Option<(f64, Vec<(usize, [f64; 2])>)> = None;
        for attempt in 0..self.cfg.max_search_iterations {
            let cand = self.propose(piece, attempt);
            let s = self.score(&cand, &new_edges);
            let better = best.as_ref().is_none_or(|(b, _)| s > *b);
            if better {
                best = Some((s, cand));
            }
            if s >= target {
                break;
            }
        }
        let (s, cand) = best.expect("at least one attempt");
        if s < self.cfg.eps_sep * self.cfg.feature_scale {
            return Err(Reject::Embedding);
        }
        let mut prev: Option<[f64; 2]> = match piece {
            Piece::Path { from, .. } => Some(self.at(*from)),
            _ => None,
        };
        for &(v, p) in &cand {
            self.pos[v - self.offset] = Some(p);
            if matches!(piece, Piece::Path { .. }) {
                self.origin[v - self.offset] = prev;
                prev = Some(p);
            }
        }
        if let Piece::Cycle { vertices, .. } = piece {
            let pts: Vec<[f64; 2]> = vertices.iter().map(|&v| self.at(v)).collect();
            let c = [
                pts.iter().map(|p| p[0]).sum::<f64>() / pts.len() as f64,
                pts.iter().map(|p| p[1]).sum::<f64>() / pts.len() as f64,
            ];
            for &v in vertices {
                self.origin[v - self.offset] = Some(c);
            }
            for &(a, b) in &new_edges {
                self.edge_center.insert(Self::ekey(a, b), c);
            }
            self.cycles.push(vertices.clone());
        }
        self.edges.extend(new_edges);
        Ok(())
    }
}

fn random_frame<R: Rng + ?Sized>(d: usize, rng: &mut R) -> [Vec<f64>; 2] {
    loop {
        let a: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let b: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na < 1e-9 {
            continue;
        }
        let a: Vec<f64> = a.iter().map(|x| x / na).collect();
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let b: Vec<f64> = b.iter().zip(&a).map(|(y, x)| y - dot * x).collect();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nb < 1e-9 {
            continue;
        }
        return [a, b.iter().map(|x| x / nb).collect()];
    }
}

pub fn random_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    random_frame(d, rng)[0].clone()
}

fn lay_out<R: Rng + ?Sized>(
    plan: &ComponentPlan,
    cfg: &GeneratorConfig,
    knobs: EmbedKnobs,
    rng: &mut R,
) -> Result<(Vec<[f64; 2]>, Vec<(usize, usize)>, f64), Reject> {
    let n = plan.vertex_count;
    let mut layout = Layout {
        cfg,
        knobs,
        rng,
        offset: plan.offset,
        pos: vec![None; n],
        origin: vec![None; n],
        edge_center: HashMap::new(),
        edges: Vec::new(),
        cycles: Vec::new(),
    };
    for piece in &plan.pieces {
        layout.place(piece)?;
    }
    let pos: Vec<[f64; 2]> = layout.pos.iter().map(|p| p.expect("every vertex placed")).collect();
    let pos_v: Vec<Vec<f64>> = pos.iter().map(|p| p.to_vec()).collect();
    let mut hole = f64::INFINITY;
    for cyc in &layout.cycles {
        let local: Vec<usize> = cyc.iter().map(|v| v - plan.offset).collect();
        let c = [
            local.iter().map(|&v| pos[v][0]).sum::<f64>() / local.len() as f64,
            local.iter().map(|&v| pos[v][1]).sum::<f64>() / local.len() as f64,
        ];
        for i in 0..local.len() {
            let (a, b) = (local[i], local[(i + 1) % local.len()]);
            hole = hole.min(point_segment_distance(&c, &pos_v[a], &pos_v[b]));
        }
    }
    let edges = layout
        .edges
        .iter()
        .map(|&(a, b)| (a - plan.offset, b - plan.offset))
        .collect();
    Ok((pos, edges, hole))
}

/// Lay out every component in a random plane of `R^d` (regular polygons for
/// cycles, jittered outward paths for branches and bridges), centre it, and
/// fix the direction along which components are spaced.
pub fn embed_graph<R: Rng + ?Sized>(
    topology: &SampledTopology,
    dim: usize,
    cfg: &GeneratorConfig,
    knobs: EmbedKnobs,
    rng: &mut R,
) -> Result<Embedding, Reject> {
    let mut local = Vec::new();
    let mut edges = Vec::new();
    let mut holes = Vec::new();
    for plan in &topology.components {
        let (pos, es, hole) = lay_out(plan, cfg, knobs, rng)?;
        let frame = random_frame(dim, rng);
        let c = [
            pos.iter().map(|p| p[0]).sum::<f64>() / pos.len() as f64,
            pos.iter().map(|p| p[1]).sum::<f64>() / pos.len() as f64,
        ];
        local.push(
            pos.iter()
                .map(|p| {
                    (0..dim)
                        .map(|k| (p[0] - c[0]) * frame[0][k] + (p[1] - c[1]) * frame[1][k])
                        .collect()
                })
                .collect(),
        );
        edges.push(es);
        holes.push(hole);
    }
    Ok(Embedding {
        dim,
        local,
        edges,
        hole_radius: holes,
        direction: random_direction(dim, rng),
        gap_ratio: knobs.gap_ratio,
    })
}
