//! Approximate graph edit distance between unlabeled multigraphs.
//!
//! Costs: inserting or deleting a vertex or a single edge costs 1, relabelling
//! or moving is free and lengths are ignored. A node assignment is chosen by a
//! bipartite matching on local signatures, its induced edit script is costed
//! exactly and then improved by pairwise swaps. Any vertex mapping yields a
//! valid edit script, so the result is an upper bound on the exact distance.

use std::collections::BTreeMap;

use super::assignment;
use crate::graph::Multigraph;

const TIE_BREAK: f64 = 1e-6;
const MAX_PASSES: usize = 64;

/// Dense multiplicity matrix padded with `pad` isolated dummy vertices.
struct Padded {
    n: usize,
    size: usize,
    mult: Vec<u32>,
}

impl Padded {
    fn new(g: &Multigraph, pad: usize) -> Self {
        let n = g.vertex_count();
        let size = n + pad;
        let mut mult = vec![0u32; size * size];
        for e in g.edges() {
            let m = e.multiplicity as u32;
            mult[e.u * size + e.v] += m;
            if e.u != e.v {
                mult[e.v * size + e.u] += m;
            }
        }
        Padded { n, size, mult }
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.size + b]
    }
}

/// Node signature: (degree, self-loops, sorted incident multiplicities).
fn signatures(g: &Multigraph) -> Vec<(usize, usize, Vec<usize>)> {
    let n = g.vertex_count();
    let deg = g.degrees();
    let loops = g.self_loop_counts();
    let mut inc: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        *inc[e.u].entry(e.v).or_default() += e.multiplicity;
        *inc[e.v].entry(e.u).or_default() += e.multiplicity;
    }
    (0..n)
        .map(|v| {
            let mut ms: Vec<usize> = inc[v].values().copied().collect();
            ms.sort_unstable();
            (deg[v], loops[v], ms)
        })
        .collect()
}

/// Two rounds of Weisfeiler-Lehman refinement seeded by the signatures.
fn wl_colors(g: &Multigraph, sig: &[(usize, usize, Vec<usize>)]) -> Vec<Vec<u64>> {
    use std::hash::{Hash, Hasher};
    let hash = |x: &dyn Fn(&mut std::collections::hash_map::DefaultHasher)| {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        x(&mut h);
        h.finish()
    };
    let n = g.vertex_count();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        for _ in 0..e.multiplicity {
            nbrs[e.u].push(e.v);
            nbrs[e.v].push(e.u);
        }
    }
    let mut rounds = vec![sig.iter().map(|s| hash(&|h| s.hash(h))).collect::<Vec<u64>>()];
    for _ in 0..2 {
        let prev = rounds.last().unwrap();
        let next = (0..n)
            .map(|v| {
                let mut around: Vec<u64> = nbrs[v].iter().map(|&u| prev[u]).collect();
                around.sort_unstable();
                hash(&|h| {
                    prev[v].hash(h);
                    around.hash(h);
                })
            })
            .collect();
        rounds.push(next);
    }
    rounds
}

fn multiset_gap(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// Source-to-target mapping over padded vertex sets: `map[a]` for every
/// `a < n1 + n2`; sources `>= n1` and targets `>= n2` are dummies.
fn initial_mapping(g1: &Multigraph, g2: &Multigraph) -> Vec<usize> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let size = n1 + n2;
    let (s1, s2) = (signatures(g1), signatures(g2));
    let (c1, c2) = (wl_colors(g1, &s1), wl_colors(g2, &s2));
    let big = 1.0 + (g1.edge_count() + g2.edge_count() + size) as f64 * 4.0;
    let mut cost = vec![vec![0.0; size]; size];
    for (a, row) in cost.iter_mut().enumerate() {
        for (b, c) in row.iter_mut().enumerate() {
            *c = match (a < n1, b < n2) {
                (true, true) => {
                    let (x, y) = (&s1[a], &s2[b]);
                    let edges = x.0.abs_diff(y.0) as f64 / 2.0
                        + x.1.abs_diff(y.1) as f64 / 2.0
                        + multiset_gap(&x.2, &y.2) as f64 / 4.0;
                    let colors = (0..c1.len()).filter(|&r| c1[r][a] != c2[r][b]).count();
                    edges + TIE_BREAK * colors as f64
                }
                (true, false) => {
                    if b - n2 == a {
                        1.0 + s1[a].0 as f64 / 2.0
                    } else {
                        big
                    }
                }
                (false, true) => {
                    if a - n1 == b {
                        1.0 + s2[b].0 as f64 / 2.0
                    } else {
                        big
                    }
                }
                (false, false) => 0.0,
            };
        }
    }
    assignment::solve(&cost).1
}

struct Search<'a> {
    p1: &'a Padded,
    p2: &'a Padded,
    map: Vec<usize>,
}

impl Search<'_> {
    fn node_cost(&self, a: usize, b: usize) -> i64 {
        ((a < self.p1.n) != (b < self.p2.n)) as i64
    }

    fn pair_cost(&self, a: usize, x: usize, ta: usize, tx: usize) -> i64 {
        (self.p1.m(a, x) as i64 - self.p2.m(ta, tx) as i64).abs()
    }

    fn total(&self) -> i64 {
        let size = self.map.len();
        let mut c = 0;
        for a in 0..size {
            c += self.node_cost(a, self.map[a]);
            for x in a..size {
                c += self.pair_cost(a, x, self.map[a], self.map[x]);
            }
        }
        c
    }

    /// Cost change from swapping the targets of `a` and `b`.
    fn swap_delta(&self, a: usize, b: usize) -> i64 {
        let (ta, tb) = (self.map[a], self.map[b]);
        let mut d = self.node_cost(a, tb) + self.node_cost(b, ta)
            - self.node_cost(a, ta)
            - self.node_cost(b, tb);
        d += self.pair_cost(a, a, tb, tb) - self.pair_cost(a, a, ta, ta);
        d += self.pair_cost(b, b, ta, ta) - self.pair_cost(b, b, tb, tb);
        for x in 0..self.map.len() {
            if x == a || x == b {
                continue;
            }
            let tx = self.map[x];
            d += self.pair_cost(a, x, tb, tx) + self.pair_cost(b, x, ta, tx)
                - self.pair_cost(a, x, ta, tx)
                - self.pair_cost(b, x, tb, tx);
        }
        d
    }

    fn improve(&mut self) -> i64 {
        let size = self.map.len();
        let (n1, n2) = (self.p1.n, self.p2.n);
        let mut cost = self.total();
        for _ in 0..MAX_PASSES {
            let mut improved = false;
            for a in 0..size {
                for b in a + 1..size {
                    if a >= n1 && b >= n1 {
                        break;
                    }
                    if self.map[a] >= n2 && self.map[b] >= n2 {
                        continue;
                    }
                    let d = self.swap_delta(a, b);
                    if d < 0 {
                        self.map.swap(a, b);
                        cost += d;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        cost
    }
}

fn directed(g1: &Multigraph, g2: &Multigraph) -> f64 {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let p1 = Padded::new(g1, n2);
    let p2 = Padded::new(g2, n1);
    let mut search = Search {
        p1: &p1,
        p2: &p2,
        map: initial_mapping(g1, g2),
    };
    search.improve() as f64
}

/// Edit cost of the vertex mapping `map` (source vertex to `Some(target)` or
/// deleted), with every unmatched target vertex inserted.
pub fn mapping_cost(g1: &Multigraph, g2: &Multigraph, map: &[Option<usize>]) -> f64 {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let p1 = Padded::new(g1, n2);
    let p2 = Padded::new(g2, n1);
    let mut used = vec![false; n2];
    let mut full = vec![usize::MAX; n1 + n2];
    for (a, t) in map.iter().enumerate() {
        if let Some(t) = *t {
            assert!(!used[t], "mapping is not injective");
            used[t] = true;
            full[a] = t;
        }
    }
    let mut dummy_targets = n2..n1 + n2;
    for slot in full.iter_mut().take(n1) {
        if *slot == usize::MAX {
            *slot = dummy_targets.next().unwrap();
        }
    }
    let mut free_targets = (0..n2).filter(|&t| !used[t]).chain(dummy_targets);
    for slot in full.iter_mut().skip(n1) {
        *slot = free_targets.next().unwrap();
    }
    Search {
        p1: &p1,
        p2: &p2,
        map: full,
    }
    .total() as f64
}

/// Symmetrised approximate GED: the smaller of the two directed estimates.
pub fn approx_ged(g1: &Multigraph, g2: &Multigraph) -> f64 {
    directed(g1, g2).min(directed(g2, g1))
}
