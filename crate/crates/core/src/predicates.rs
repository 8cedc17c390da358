//! Structural predicates: degree class, connectivity, bridges, claws,
//! triangles and long induced cycles.
//!
//! Every search scans vertices in ascending id order, so witnesses are
//! reproducible.

use serde::{Deserialize, Serialize};

use crate::error::BudgetExceeded;
use crate::graph::{Edge, Graph};

/// Default node budget for the induced-cycle search.
pub const DEFAULT_CYCLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeClass {
    Cubic,
    SubcubicNotCubic,
    ExceedsThree,
}

impl DegreeClass {
    pub fn is_subcubic(self) -> bool {
        self != DegreeClass::ExceedsThree
    }
}

/// An induced K_{1,3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Degrees of `x`, `y`, `z` in the graph, sorted ascending.
    pub degree_pattern: [usize; 3],
}

impl TriangleWitness {
    pub fn vertices(&self) -> [usize; 3] {
        [self.x, self.y, self.z]
    }
}

/// A chordless cycle, as a cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InducedCycleWitness {
    pub cycle: Vec<usize>,
}

impl InducedCycleWitness {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Checks the witness against `g`: consecutive vertices adjacent, no
    /// other adjacencies, no repeats.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let c = &self.cycle;
        let k = c.len();
        if k < 3 || c.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                g.has_edge(c[i], c[j]) == consecutive
            })
        })
    }
}

pub fn degree_class(g: &Graph) -> DegreeClass {
    let max = g.max_degree();
    if max > 3 {
        DegreeClass::ExceedsThree
    } else if (0..g.n()).all(|v| g.degree(v) == 3) {
        DegreeClass::Cubic
    } else {
        DegreeClass::SubcubicNotCubic
    }
}

/// The first vertex of degree above 3, with its degree.
pub fn first_overfull_vertex(g: &Graph) -> Option<(usize, usize)> {
    (0..g.n()).map(|v| (v, g.degree(v))).find(|&(_, d)| d > 3)
}

/// Graphs with at most one vertex count as connected.
pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || g.components().len() == 1
}

/// All bridges in canonical order, by an iterative low-point DFS.
pub fn bridges(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if order[root] != UNSEEN {
            continue;
        }
        order[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            if let Some(&w) = g.neighbors(v).get(idx) {
                frame.2 += 1;
                if w == parent {
                    continue;
                }
                if order[w] == UNSEEN {
                    order[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.push(Edge::new(parent, v).unwrap());
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_two_edge_connected(g: &Graph) -> bool {
    g.n() >= 2 && is_connected(g) && bridges(g).is_empty()
}

/// Finds an induced claw. On subcubic graphs only degree-3 vertices can be
/// centers and each has a single neighbor triple to check; higher degrees
/// fall back to scanning every neighbor triple.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for center in 0..g.n() {
        let nb = g.neighbors(center);
        match nb.len() {
            0..=2 => {}
            3 => {
                let [a, b, c] = [nb[0], nb[1], nb[2]];
                if !g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c) {
                    return Some(ClawWitness {
                        center,
                        leaves: [a, b, c],
                    });
                }
            }
            d => {
                for i in 0..d {
                    for j in i + 1..d {
                        if g.has_edge(nb[i], nb[j]) {
                            continue;
                        }
                        for k in j + 1..d {
                            if !g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k]) {
                                return Some(ClawWitness {
                                    center,
                                    leaves: [nb[i], nb[j], nb[k]],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Every triangle once, as an ascending triple, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<TriangleWitness> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        let start = nb.partition_point(|&w| w <= x);
        for (i, &y) in nb[start..].iter().enumerate() {
            for &z in &nb[start + i + 1..] {
                if g.has_edge(y, z) {
                    let mut degree_pattern = [g.degree(x), g.degree(y), g.degree(z)];
                    degree_pattern.sort_unstable();
                    out.push(TriangleWitness {
                        x,
                        y,
                        z,
                        degree_pattern,
                    });
                }
            }
        }
    }
    out
}

/// Lexicographically smallest triangle, if any.
pub fn first_triangle(g: &Graph) -> Option<TriangleWitness> {
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        let start = nb.partition_point(|&w| w <= x);
        for (i, &y) in nb[start..].iter().enumerate() {
            if let Some(&z) = nb[start + i + 1..].iter().find(|&&z| g.has_edge(y, z)) {
                let mut degree_pattern = [g.degree(x), g.degree(y), g.degree(z)];
                degree_pattern.sort_unstable();
                return Some(TriangleWitness {
                    x,
                    y,
                    z,
                    degree_pattern,
                });
            }
        }
    }
    None
}

/// Searches for a chordless cycle with more than `k` vertices.
///
/// For each start vertex `s` in ascending order, grows induced paths
/// through vertices larger than `s`; a path is abandoned as soon as a new
/// vertex is adjacent to an interior path vertex. Each vertex added to a
/// path costs one node of `budget`; running out is an error, never a
/// false "absent".
pub fn find_induced_cycle_longer_than(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Option<InducedCycleWitness>, BudgetExceeded> {
    assert!(k >= 3, "cycle length bound must be at least 3");
    let n = g.n();
    let mut search = CycleSearch {
        g,
        k,
        budget,
        nodes: 0,
        path: Vec::new(),
        // number of path vertices adjacent to each vertex
        touch: vec![0u32; n],
        on_path: vec![false; n],
    };
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        search.push(s);
        if search.extend(s)? {
            return Ok(Some(InducedCycleWitness { cycle: search.path }));
        }
        search.pop();
    }
    Ok(None)
}

pub fn is_four_chordal(g: &Graph, budget: u64) -> Result<bool, BudgetExceeded> {
    Ok(find_induced_cycle_longer_than(g, 4, budget)?.is_none())
}

struct CycleSearch<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    nodes: u64,
    path: Vec<usize>,
    touch: Vec<u32>,
    on_path: Vec<bool>,
}

impl CycleSearch<'_> {
    fn push(&mut self, v: usize) {
        self.path.push(v);
        self.on_path[v] = true;
        for &w in self.g.neighbors(v) {
            self.touch[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.on_path[v] = false;
        for &w in self.g.neighbors(v) {
            self.touch[w] -= 1;
        }
    }

    /// Extends the current induced path whose first vertex is `s`. On
    /// success the path holds the cycle and is left in place.
    fn extend(&mut self, s: usize) -> Result<bool, BudgetExceeded> {
        let last = *self.path.last().unwrap();
        let len = self.path.len();
        let g = self.g;
        for &w in g.neighbors(last) {
            if w <= s || self.on_path[w] {
                continue;
            }
            let adj_start = g.has_edge(w, s);
            // Neighbors of w on the path: `last`, plus `s` if adjacent.
            // Anything more is a chord.
            let allowed = 1 + u32::from(adj_start && len > 1);
            if self.touch[w] != allowed {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded { nodes: self.nodes });
            }
            if adj_start && len > 1 {
                // closes the chordless cycle s .. last w
                if len + 1 > self.k {
                    self.push(w);
                    return Ok(true);
                }
                continue;
            }
            self.push(w);
            if self.extend(s)? {
                return Ok(true);
            }
            self.pop();
        }
        Ok(false)
    }
}
