use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::GeneratorConfig;
use crate::graph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyClass {
    Singleton,
    SingleEdge,
    Tree,
    SingleCycle,
    MultiCycle,
    Hybrid,
}

impl TopologyClass {
    pub const ALL: [TopologyClass; 6] = [
        TopologyClass::Singleton,
        TopologyClass::SingleEdge,
        TopologyClass::Tree,
        TopologyClass::SingleCycle,
        TopologyClass::MultiCycle,
        TopologyClass::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopologyClass::Singleton => "singleton",
            TopologyClass::SingleEdge => "single_edge",
            TopologyClass::Tree => "tree",
            TopologyClass::SingleCycle => "single_cycle",
            TopologyClass::MultiCycle => "multi_cycle",
            TopologyClass::Hybrid => "hybrid",
        }
    }

    /// Whether a component with cycle rank `b1` and `branches` attached
    /// paths honours this class.
    pub fn admits(self, b1: usize, branches: usize) -> bool {
        match self {
            TopologyClass::Singleton | TopologyClass::SingleEdge | TopologyClass::Tree => b1 == 0,
            TopologyClass::SingleCycle => b1 == 1,
            TopologyClass::MultiCycle => b1 >= 2,
            TopologyClass::Hybrid => b1 >= 1 && branches >= 1,
        }
    }
}

/// How a new cycle attaches to what is already built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    Free,
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Branch,
    Bridge,
}

/// One construction step. Vertex ids are global.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    Root(usize),
    /// Cycle through `vertices` in order; anchored vertices come first.
    Cycle { anchor: Anchor, vertices: Vec<usize> },
    /// Path `from -> vertices[0] -> ...`.
    Path {
        kind: PathKind,
        from: usize,
        vertices: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentPlan {
    pub class: TopologyClass,
    /// First vertex id; the component owns `offset..offset + vertex_count`.
    pub offset: usize,
    pub vertex_count: usize,
    pub pieces: Vec<Piece>,
    pub branches: usize,
}

impl ComponentPlan {
    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.vertex_count
    }
}

/// A latent graph together with the steps that built it.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledTopology {
    pub graph: Multigraph,
    pub components: Vec<ComponentPlan>,
}

/// Unit-length edges of a plan in construction order.
pub fn plan_edges(pieces: &[Piece]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in pieces {
        match p {
            Piece::Root(_) => {}
            Piece::Cycle { anchor, vertices } => {
                let skip = matches!(anchor, Anchor::Edge(..)) as usize;
                let l = vertices.len();
                for i in skip..l {
                    out.push((vertices[i], vertices[(i + 1) % l]));
                }
            }
            Piece::Path { from, vertices, .. } => {
                let mut prev = *from;
                for &v in vertices {
                    out.push((prev, v));
                    prev = v;
                }
            }
        }
    }
    out
}

struct Builder<'a, R: Rng + ?Sized> {
    cfg: &'a GeneratorConfig,
    rng: &'a mut R,
    offset: usize,
    next: usize,
    degree: Vec<usize>,
    pieces: Vec<Piece>,
    /// Cycle edges that belong to exactly one cycle and may host a fused edge.
    boundary: Vec<(usize, usize)>,
    edges: usize,
    branches: usize,
}

impl<R: Rng + ?Sized> Builder<'_, R> {
    fn vertex(&mut self) -> usize {
        self.degree.push(0);
        self.next += 1;
        self.next - 1
    }

    fn deg(&self, v: usize) -> usize {
        self.degree[v - self.offset]
    }

    fn bump(&mut self, v: usize) {
        self.degree[v - self.offset] += 1;
    }

    fn link(&mut self, a: usize, b: usize) {
        self.bump(a);
        self.bump(b);
        self.edges += 1;
    }

    fn all_vertices(&self) -> std::ops::Range<usize> {
        self.offset..self.next
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> Option<T> {
        if xs.is_empty() {
            None
        } else {
            Some(xs[self.rng.random_range(0..xs.len())])
        }
    }

    fn cycle(&mut self, anchor: Anchor) {
        let len = self.cfg.cycle_length.sample(self.rng);
        let mut vertices = match anchor {
            Anchor::Free => vec![],
            Anchor::Vertex(v) => vec![v],
            Anchor::Edge(a, b) => vec![a, b],
        };
        while vertices.len() < len {
            let v = self.vertex();
            vertices.push(v);
        }
        let skip = matches!(anchor, Anchor::Edge(..)) as usize;
        for i in skip..len {
            let (a, b) = (vertices[i], vertices[(i + 1) % len]);
            self.link(a, b);
            self.boundary.push((a, b));
        }
        if let Anchor::Edge(a, b) = anchor {
            self.boundary.retain(|&e| e != (a, b) && e != (b, a));
        }
        self.pieces.push(Piece::Cycle { anchor, vertices });
    }

    fn path(&mut self, kind: PathKind, from: usize, len: usize) -> usize {
        let mut vertices = Vec::with_capacity(len);
        let mut prev = from;
        for _ in 0..len {
            let v = self.vertex();
            self.link(prev, v);
            vertices.push(v);
            prev = v;
        }
        self.pieces.push(Piece::Path {
            kind,
            from,
            vertices,
        });
        prev
    }

    fn branch(&mut self, from: usize, depth: usize) {
        let len = self.cfg.branch_length.sample(self.rng);
        let tip = self.path(PathKind::Branch, from, len);
        self.branches += 1;
        if depth > 1 {
            let children = self.rng.random_range(0..=2usize);
            for _ in 0..children {
                if self.deg(tip) < self.cfg.degree_cap {
                    self.branch(tip, depth - 1);
                }
            }
        }
    }

    /// Add one more cycle, fused onto a vertex or edge or separated by a
    /// bridge, whichever is chosen and available under the degree cap.
    fn extra_cycle(&mut self) -> bool {
        let cap = self.cfg.degree_cap;
        let fused = self.rng.random_bool(0.5);
        if fused {
            let share_edge = self.rng.random_bool(0.5);
            if share_edge {
                let eligible: Vec<(usize, usize)> = self
                    .boundary
                    .iter()
                    .copied()
                    .filter(|&(a, b)| self.deg(a) < cap && self.deg(b) < cap)
                    .collect();
                if let Some((a, b)) = self.pick(&eligible) {
                    self.cycle(Anchor::Edge(a, b));
                    return true;
                }
            } else {
                let eligible: Vec<usize> =
                    self.all_vertices().filter(|&v| self.deg(v) + 2 <= cap).collect();
                if let Some(v) = self.pick(&eligible) {
                    self.cycle(Anchor::Vertex(v));
                    return true;
                }
            }
            return false;
        }
        let eligible: Vec<usize> = self.all_vertices().filter(|&v| self.deg(v) < cap).collect();
        if let Some(v) = self.pick(&eligible) {
            let len = self.rng.random_range(1..=2usize);
            let tip = self.path(PathKind::Bridge, v, len);
            self.cycle(Anchor::Vertex(tip));
            return true;
        }
        false
    }

    fn branches(&mut self, count: usize, depth: usize) {
        for _ in 0..count {
            let cap = self.cfg.degree_cap;
            let eligible: Vec<usize> = self.all_vertices().filter(|&v| self.deg(v) < cap).collect();
            if let Some(v) = self.pick(&eligible) {
                self.branch(v, depth);
            }
        }
    }
}

/// Draw one component of `class` whose first vertex id is `offset`. Returns
/// `None` when the draw breaks the class contract or the remaining budget.
pub fn sample_component<R: Rng + ?Sized>(
    cfg: &GeneratorConfig,
    class: TopologyClass,
    offset: usize,
    node_budget: usize,
    edge_budget: usize,
    rng: &mut R,
) -> Option<ComponentPlan> {
    let mut b = Builder {
        cfg,
        rng,
        offset,
        next: offset,
        degree: Vec::new(),
        pieces: Vec::new(),
        boundary: Vec::new(),
        edges: 0,
        branches: 0,
    };
    let depth = cfg.branch_depth.sample(b.rng);
    match class {
        TopologyClass::Singleton => {
            let r = b.vertex();
            b.pieces.push(Piece::Root(r));
        }
        TopologyClass::SingleEdge => {
            let r = b.vertex();
            b.pieces.push(Piece::Root(r));
            b.path(PathKind::Branch, r, 1);
        }
        TopologyClass::Tree => {
            let r = b.vertex();
            b.pieces.push(Piece::Root(r));
            let count = cfg.branch_count.sample(b.rng).max(1);
            b.branches(count, depth);
        }
        TopologyClass::SingleCycle => b.cycle(Anchor::Free),
        TopologyClass::MultiCycle | TopologyClass::Hybrid => {
            let cycles = if class == TopologyClass::MultiCycle {
                b.rng.random_range(2..=cfg.max_cycles)
            } else {
                cfg.hybrid_cycles.sample(b.rng).clamp(1, cfg.max_cycles)
            };
            b.cycle(Anchor::Free);
            for _ in 1..cycles {
                if !b.extra_cycle() {
                    return None;
                }
            }
            if class == TopologyClass::Hybrid {
                let count = cfg.branch_count.sample(b.rng).max(1);
                b.branches(count, depth);
            }
        }
    }
    let vertex_count = b.next - offset;
    let b1 = b.edges + 1 - vertex_count;
    if vertex_count > node_budget || b.edges > edge_budget || !class.admits(b1, b.branches) {
        return None;
    }
    Some(ComponentPlan {
        class,
        offset,
        vertex_count,
        pieces: b.pieces,
        branches: b.branches,
    })
}

/// Number of components: one, plus further ones with probability
/// `p · decay^(c-1)` each, capped.
pub fn sample_component_count<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> usize {
    let mut c = 1;
    let mut p = cfg.component_probability;
    while c < cfg.max_components && rng.random_bool(p.clamp(0.0, 1.0)) {
        c += 1;
        p *= cfg.component_decay;
    }
    c
}

pub fn sample_class<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> TopologyClass {
    let ps = cfg.class_probabilities.as_array();
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (class, p) in TopologyClass::ALL.iter().zip(ps) {
        acc += p;
        if u < acc {
            return *class;
        }
    }
    *TopologyClass::ALL
        .iter()
        .zip(ps)
        .rev()
        .find(|(_, p)| *p > 0.0)
        .map(|(c, _)| c)
        .unwrap_or(&TopologyClass::Hybrid)
}

/// Latent graph: components drawn independently, each retried within its
/// class until it fits the remaining node and edge caps. `None` if some
/// class cannot be realised within the retry budget.
pub fn sample_topology<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Option<SampledTopology> {
    let count = sample_component_count(cfg, rng);
    let classes: Vec<TopologyClass> = (0..count).map(|_| sample_class(cfg, rng)).collect();
    let mut components = Vec::with_capacity(count);
    let (mut nodes, mut edges) = (0usize, 0usize);
    for class in classes {
        let plan = (0..cfg.max_topology_retries.max(1)).find_map(|_| {
            sample_component(
                cfg,
                class,
                nodes,
                cfg.max_nodes - nodes,
                cfg.max_edges - edges,
                rng,
            )
        })?;
        nodes += plan.vertex_count;
        edges += plan_edges(&plan.pieces).len();
        components.push(plan);
    }
    let mut graph = Multigraph::new(nodes);
    for plan in &components {
        for (a, b) in plan_edges(&plan.pieces) {
            graph.add_edge(a, b, 1.0).expect("plan edges reference plan vertices");
        }
    }
    Some(SampledTopology { graph, components })
}
