//! Graph families used as fixtures, plus a seeded random sampler.
//!
//! Labelings:
//! * `cycle(n)`: vertices `0..n` in cyclic order.
//! * `prism(n)`: outer cycle `0..n`, inner cycle `n..2n`, rungs `i`-`i+n`.
//! * `petersen()`: outer cycle `0..5`, inner pentagram `5..10`
//!   (`5+i`-`5+(i+2)%5`), spokes `i`-`i+5`.
//! * `complete_bipartite(a, b)`: sides `0..a` and `a..a+b`.
//!
//! # Random sampler
//!
//! [`random_connected_subcubic`] is rejection-based and NOT uniform over
//! its class. Randomness comes from SplitMix64 seeded with the given seed
//! (state += 0x9e3779b97f4a7c15, then the standard 30/27/31 xor-shift
//! multiply finalizer). An index below `k` is drawn as
//! `(next_u64() as u128 * k as u128) >> 64`. Each attempt:
//!
//! 1. draws a target edge count `t = n - 1 + below(floor(3n/2) - n + 2)`
//!    unless one was given;
//! 2. keeps a list of candidate pairs `(u, v)`, `u < v`, in lexicographic
//!    order; while fewer than `t` edges are placed, draws a candidate
//!    uniformly, removes it from the list, and adds it if both endpoints
//!    have degree below 3 and the filter still holds with the edge added;
//! 3. accepts the graph if it is connected and passes the filter.
//!
//! Attempts continue on the same generator stream until one is accepted or
//! `retry_cap` attempts have failed.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::GenError;
use crate::graph::{Edge, Graph};
use crate::predicates::{
    degree_class, find_induced_cycle_longer_than, is_claw_free, is_connected, DegreeClass,
};

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::ParamOutOfRange(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Ok(Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
}

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::ParamOutOfRange("path needs n >= 1".into()));
    }
    Ok(Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).unwrap())
}

/// K_n for `1 <= n <= 4` (larger complete graphs are not subcubic).
pub fn complete(n: usize) -> Result<Graph, GenError> {
    if !(1..=4).contains(&n) {
        return Err(GenError::ParamOutOfRange(format!(
            "complete needs 1 <= n <= 4, got {n}"
        )));
    }
    Ok(Graph::from_edge_list(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap())
}

/// K4 without the edge 0-3.
pub fn k4_minus_edge() -> Graph {
    Graph::from_edge_list(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// K_{a,b} with `1 <= a, b <= 3`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GenError> {
    if !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(GenError::ParamOutOfRange(format!(
            "complete_bipartite needs sides in 1..=3, got ({a}, {b})"
        )));
    }
    Ok(Graph::from_edge_list(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap())
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edge_list(10, outer.chain(inner).chain(spokes)).unwrap()
}

/// C_n × K2.
pub fn prism(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::ParamOutOfRange(format!(
            "prism needs n >= 3, got {n}"
        )));
    }
    let outer = (0..n).map(|i| (i, (i + 1) % n));
    let inner = (0..n).map(|i| (n + i, n + (i + 1) % n));
    let rungs = (0..n).map(|i| (i, i + n));
    Ok(Graph::from_edge_list(2 * n, outer.chain(inner).chain(rungs)).unwrap())
}

/// Replaces every vertex `v` of a cubic graph by the triangle
/// `3v, 3v+1, 3v+2`; the edge to the `i`-th neighbor of `v` (ascending)
/// attaches at `3v + i`. The result is cubic and claw-free.
pub fn triangle_inflation(g: &Graph) -> Result<Graph, GenError> {
    if degree_class(g) != DegreeClass::Cubic || g.n() == 0 {
        return Err(GenError::NotCubic);
    }
    let mut edges = Vec::with_capacity(3 * g.n() + g.edge_count());
    for v in 0..g.n() {
        let b = 3 * v;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let iu = g.neighbors(u).binary_search(&v).unwrap();
        let iv = g.neighbors(v).binary_search(&u).unwrap();
        edges.push((3 * u + iu, 3 * v + iv));
    }
    Ok(Graph::from_edge_list(3 * g.n(), edges).unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    #[default]
    None,
    ClawFree,
    FourChordal,
}

impl Filter {
    fn accepts(self, g: &Graph) -> bool {
        match self {
            Filter::None => true,
            Filter::ClawFree => is_claw_free(g),
            // tiny graphs; the budget is never close to binding
            Filter::FourChordal => {
                matches!(find_induced_cycle_longer_than(g, 4, 1 << 40), Ok(None))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub seed: u64,
    pub filter: Filter,
    /// Edge count to stop at; drawn per attempt when absent.
    pub target_edges: Option<usize>,
    pub retry_cap: usize,
}

impl RandomSpec {
    pub fn new(n: usize, seed: u64, filter: Filter) -> Self {
        RandomSpec {
            n,
            seed,
            filter,
            target_edges: None,
            retry_cap: 10_000,
        }
    }
}

/// The portable generator stream described in the module docs.
pub struct SampleRng(SplitMix64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish index in `0..k` by multiply-shift. `k` must be positive.
    pub fn below(&mut self, k: usize) -> usize {
        debug_assert!(k > 0);
        ((self.next_u64() as u128 * k as u128) >> 64) as usize
    }
}

pub fn random_connected_subcubic(spec: &RandomSpec) -> Result<Graph, GenError> {
    let n = spec.n;
    if n == 0 {
        return Err(GenError::ParamOutOfRange(
            "random graphs need n >= 1".into(),
        ));
    }
    if spec.retry_cap == 0 {
        return Err(GenError::ParamOutOfRange(
            "retry_cap must be positive".into(),
        ));
    }
    let max_edges = 3 * n / 2;
    if let Some(t) = spec.target_edges {
        if t + 1 < n || t > max_edges {
            return Err(GenError::ParamOutOfRange(format!(
                "target_edges {t} outside {}..={max_edges}",
                n - 1
            )));
        }
    }
    let mut rng = SampleRng::new(spec.seed);
    for _ in 0..spec.retry_cap {
        let target = spec
            .target_edges
            .unwrap_or_else(|| n - 1 + rng.below(max_edges + 2 - n));
        let g = one_attempt(n, target, spec.filter, &mut rng);
        if is_connected(&g) && spec.filter.accepts(&g) {
            return Ok(g);
        }
    }
    Err(GenError::RetryCapExhausted(spec.retry_cap))
}

fn one_attempt(n: usize, target: usize, filter: Filter, rng: &mut SampleRng) -> Graph {
    let mut candidates: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v).unwrap()))
        .collect();
    let mut edges: Vec<Edge> = Vec::with_capacity(target);
    let mut degree = vec![0usize; n];
    while edges.len() < target && !candidates.is_empty() {
        let e = candidates.remove(rng.below(candidates.len()));
        let (u, v) = e.endpoints();
        if degree[u] >= 3 || degree[v] >= 3 {
            continue;
        }
        edges.push(e);
        if filter != Filter::None
            && !filter.accepts(&Graph::from_edges_unchecked(n, edges.iter().copied()))
        {
            edges.pop();
            continue;
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    Graph::from_edges_unchecked(n, edges)
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenSpec {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    K4MinusEdge,
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    Prism { n: usize },
    TriangleInflation { base: Box<GenSpec> },
    Random(RandomSpec),
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match self {
            GenSpec::Cycle { n } => cycle(*n),
            GenSpec::Path { n } => path(*n),
            GenSpec::Complete { n } => complete(*n),
            GenSpec::K4MinusEdge => Ok(k4_minus_edge()),
            GenSpec::CompleteBipartite { a, b } => complete_bipartite(*a, *b),
            GenSpec::Petersen => Ok(petersen()),
            GenSpec::Prism { n } => prism(*n),
            GenSpec::TriangleInflation { base } => triangle_inflation(&base.generate()?),
            GenSpec::Random(spec) => random_connected_subcubic(spec),
        }
    }
}
