//! Constructive decomposition of connected claw-free subcubic graphs.
//!
//! The graph is reduced step by step; each step records a [`TraceEntry`]:
//!
//! * `BASE_SMALL`: at most 3 vertices, decomposed directly (a triangle gets
//!   two tree edges and one matching edge).
//! * `CUT_EDGE`: a bridge goes into the tree and both sides are solved
//!   independently. A side that is a single vertex needs nothing further
//!   and gets no entry of its own, which keeps the trace no longer than
//!   the vertex count.
//! * `BASE_CYCLE`: 2-edge-connected and triangle-free, hence a cycle; one
//!   edge becomes the matching, the rest the tree.
//! * `TRI_333`: a triangle of degree-3 vertices. Its three external edges
//!   go into the tree, the triangle becomes a 2-regular cycle, and the rest
//!   of the graph is solved.
//! * `TRI_233_K4_MINUS_EDGE`: a triangle `x y z` with `deg x = 2` whose
//!   other two vertices share a second neighbor `b`; the graph is K4 minus
//!   an edge and is decomposed directly.
//! * `TRI_233_IDENTIFY_A2` / `_A1`: otherwise `x y z` is merged into one
//!   vertex `a` of degree 2, the smaller graph is solved, and the triangle
//!   is put back. If both edges at `a` are tree edges (A2) the tree gains
//!   `xy, yz` and `xz` joins the matching. If only one is (A1), the other
//!   is necessarily a matching edge; the vertex whose external edge is in
//!   the tree plays `z`, and the same rule applies.
//!
//! Steps always look at bridges first, then the cycle case, then the
//! lexicographically smallest triangle. Branches that cannot occur in a
//! 2-edge-connected claw-free subcubic graph raise a
//! [`TheoremViolation`] instead of being silently skipped.
//!
//! The reduction runs on an explicit work stack. Every edge of every
//! reduced graph corresponds to exactly one edge of the input graph, so
//! labels are written straight into the final decomposition and the
//! "put the triangle back" steps run once everything beneath them is done.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::decomposition::{verify, Decomposition, Part};
use crate::error::{ClawFreeError, PreconditionError, TheoremViolation};
use crate::exact::{
    check_search_input, find_good_decomposition, Outcome, SearchLimits, SearchStats,
};
use crate::graph::{Edge, Graph, VertexMap};
use crate::graph6::{write_graph6, MAX_VERTICES};
use crate::predicates::{bridges, find_claw, first_triangle, is_connected};

/// Largest input the constructive solver accepts.
pub const MAX_CLAWFREE_VERTICES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "BASE_SMALL")]
    BaseSmall,
    #[serde(rename = "BASE_CYCLE")]
    BaseCycle,
    #[serde(rename = "CUT_EDGE")]
    CutEdge,
    #[serde(rename = "TRI_333")]
    Tri333,
    #[serde(rename = "TRI_233_K4_MINUS_EDGE")]
    Tri233K4MinusEdge,
    #[serde(rename = "TRI_233_IDENTIFY_A2")]
    Tri233IdentifyA2,
    #[serde(rename = "TRI_233_IDENTIFY_A1")]
    Tri233IdentifyA1,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::BaseSmall,
        CaseTag::BaseCycle,
        CaseTag::CutEdge,
        CaseTag::Tri333,
        CaseTag::Tri233K4MinusEdge,
        CaseTag::Tri233IdentifyA2,
        CaseTag::Tri233IdentifyA1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::BaseSmall => "BASE_SMALL",
            CaseTag::BaseCycle => "BASE_CYCLE",
            CaseTag::CutEdge => "CUT_EDGE",
            CaseTag::Tri333 => "TRI_333",
            CaseTag::Tri233K4MinusEdge => "TRI_233_K4_MINUS_EDGE",
            CaseTag::Tri233IdentifyA2 => "TRI_233_IDENTIFY_A2",
            CaseTag::Tri233IdentifyA1 => "TRI_233_IDENTIFY_A1",
        }
    }
}

/// One reduction step.
///
/// Vertices and edges are in input-graph ids. A vertex created by merging
/// a triangle is reported as the smallest input vertex merged into it;
/// edges are always exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub tag: CaseTag,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CaseTrace {
    pub entries: Vec<TraceEntry>,
}

impl CaseTrace {
    pub fn tags(&self) -> impl Iterator<Item = CaseTag> + '_ {
        self.entries.iter().map(|e| e.tag)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A graph on the work stack, with its link back to the input graph.
struct Subproblem {
    graph: Graph,
    /// Representative input vertex of each local vertex.
    rep: Vec<usize>,
    /// Input edge behind each local edge.
    origin: HashMap<Edge, Edge>,
}

impl Subproblem {
    fn root(g: &Graph) -> Self {
        Subproblem {
            graph: g.clone(),
            rep: (0..g.n()).collect(),
            origin: g.edges().map(|e| (e, e)).collect(),
        }
    }

    fn orig(&self, a: usize, b: usize) -> Edge {
        self.origin[&Edge::new(a, b).expect("local edge")]
    }

    /// Lifts a child produced by vertex surgery. `merged_origin` supplies the
    /// local edge behind each new edge at a merged vertex.
    fn child(
        &self,
        graph: Graph,
        map: &VertexMap,
        merged_origin: Option<&HashMap<Edge, Edge>>,
    ) -> Subproblem {
        let pre = map.preimages(graph.n());
        let rep = pre
            .iter()
            .map(|olds| {
                olds.iter()
                    .map(|&o| self.rep[o])
                    .min()
                    .expect("every new vertex has a preimage")
            })
            .collect();
        let origin = graph
            .edges()
            .map(|e| {
                let local = match merged_origin.and_then(|m| m.get(&e)) {
                    Some(&old) => old,
                    None => {
                        Edge::new(pre[e.u()][0], pre[e.v()][0]).expect("surgery keeps edges simple")
                    }
                };
                (e, self.origin[&local])
            })
            .collect();
        Subproblem { graph, rep, origin }
    }
}

/// Deferred "put the triangle back" step of TRI_233_IDENTIFY.
struct Lift {
    trace_index: usize,
    xy: Edge,
    yz: Edge,
    xz: Edge,
    ext_y: Edge,
    ext_z: Edge,
}

enum Task {
    Solve(Subproblem),
    Lift(Lift),
}

struct Builder {
    d: Decomposition,
    match_deg: Vec<u8>,
    cycle_deg: Vec<u8>,
    trace: CaseTrace,
}

impl Builder {
    fn label(&mut self, e: Edge, part: Part) {
        self.d
            .insert(e, part)
            .expect("each input edge is labeled once");
        let (u, v) = e.endpoints();
        match part {
            Part::Matching => {
                self.match_deg[u] += 1;
                self.match_deg[v] += 1;
            }
            Part::TwoRegular => {
                self.cycle_deg[u] += 1;
                self.cycle_deg[v] += 1;
            }
            Part::Tree => {}
        }
    }

    fn record(&mut self, tag: CaseTag, vertices: Vec<usize>, edges: Vec<Edge>) -> usize {
        self.trace.entries.push(TraceEntry {
            tag,
            vertices,
            edges,
        });
        self.trace.entries.len() - 1
    }

    fn violation(&self, reason: String, graph: &Graph) -> ClawFreeError {
        let graph6 =
            (graph.n() <= MAX_VERTICES).then(|| write_graph6(graph).expect("size checked"));
        ClawFreeError::TheoremViolation(Box::new(TheoremViolation {
            reason,
            graph6,
            trace: self.trace.clone(),
        }))
    }
}

/// Checks the claw-free solver's input class.
pub fn check_clawfree_input(g: &Graph) -> Result<(), PreconditionError> {
    if g.n() > MAX_CLAWFREE_VERTICES {
        return Err(PreconditionError::TooLarge {
            n: g.n(),
            max: MAX_CLAWFREE_VERTICES,
        });
    }
    check_search_input(g)?;
    if let Some(w) = find_claw(g) {
        return Err(PreconditionError::NotClawFree(w));
    }
    Ok(())
}

/// Decomposes a connected claw-free subcubic graph, returning the
/// decomposition together with the sequence of reduction steps taken.
pub fn decompose_clawfree(g: &Graph) -> Result<(Decomposition, CaseTrace), ClawFreeError> {
    check_clawfree_input(g)?;
    let mut b = Builder {
        d: Decomposition::default(),
        match_deg: vec![0; g.n()],
        cycle_deg: vec![0; g.n()],
        trace: CaseTrace::default(),
    };
    let mut stack = vec![Task::Solve(Subproblem::root(g))];
    while let Some(task) = stack.pop() {
        match task {
            Task::Solve(sub) => solve_step(sub, &mut b, &mut stack)?,
            Task::Lift(lift) => lift_triangle(lift, &mut b, g)?,
        }
    }
    let report = verify(g, &b.d);
    if !report.ok {
        return Err(b.violation(
            format!("constructed decomposition fails verification: {report}"),
            g,
        ));
    }
    Ok((b.d, b.trace))
}

fn solve_step(
    sub: Subproblem,
    b: &mut Builder,
    stack: &mut Vec<Task>,
) -> Result<(), ClawFreeError> {
    let g = &sub.graph;
    let n = g.n();

    if n <= 3 {
        let edges = g.edge_vec();
        match edges.len() {
            3 => {
                b.label(sub.orig(0, 1), Part::Tree);
                b.label(sub.orig(1, 2), Part::Tree);
                b.label(sub.orig(0, 2), Part::Matching);
            }
            m if m + 1 == n => {
                for e in &edges {
                    b.label(sub.origin[e], Part::Tree);
                }
            }
            _ => return Err(b.violation("small subproblem is not connected".into(), g)),
        }
        b.record(CaseTag::BaseSmall, sub.rep.clone(), Vec::new());
        return Ok(());
    }

    if let Some(&bridge) = bridges(g).first() {
        let orig = sub.origin[&bridge];
        b.label(orig, Part::Tree);
        b.record(
            CaseTag::CutEdge,
            vec![sub.rep[bridge.u()], sub.rep[bridge.v()]],
            vec![orig],
        );
        let split = g.remove_edges(&[bridge]);
        let comps = split.components();
        if comps.len() != 2 {
            return Err(b.violation(
                format!("bridge {bridge} left {} components", comps.len()),
                g,
            ));
        }
        // the side holding the smaller endpoint is solved first
        for keep in comps.iter().rev().filter(|c| c.len() > 1) {
            let mut inside = vec![false; n];
            for &v in keep {
                inside[v] = true;
            }
            let removed: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
            let (h, map) = split.remove_vertices(&removed);
            stack.push(Task::Solve(sub.child(h, &map, None)));
        }
        return Ok(());
    }

    let Some(t) = first_triangle(g) else {
        if let Some(v) = (0..n).find(|&v| g.degree(v) != 2) {
            return Err(b.violation(
                format!(
                    "2-edge-connected triangle-free graph has vertex {v} of degree {}",
                    g.degree(v)
                ),
                g,
            ));
        }
        let mut edges = g.edges();
        let dropped = edges.next().expect("cycle has edges");
        for e in edges {
            b.label(sub.origin[&e], Part::Tree);
        }
        let m = sub.origin[&dropped];
        b.label(m, Part::Matching);
        b.record(CaseTag::BaseCycle, sub.rep.clone(), vec![m]);
        return Ok(());
    };

    let tri = t.vertices();
    let outside = |v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|w| !tri.contains(w))
            .collect()
    };

    match t.degree_pattern {
        [3, 3, 3] => {
            let (x, y, z) = (t.x, t.y, t.z);
            let ext: Vec<Edge> = tri.iter().map(|&v| sub.orig(v, outside(v)[0])).collect();
            let (h, map) = g.remove_vertices(&tri);
            if !is_connected(&h) {
                return Err(b.violation(
                    format!("removing triangle {x},{y},{z} disconnects a 2-edge-connected graph"),
                    g,
                ));
            }
            for &e in &ext {
                b.label(e, Part::Tree);
            }
            for (p, q) in [(x, y), (y, z), (x, z)] {
                b.label(sub.orig(p, q), Part::TwoRegular);
            }
            b.record(CaseTag::Tri333, tri.iter().map(|&v| sub.rep[v]).collect(), ext);
            stack.push(Task::Solve(sub.child(h, &map, None)));
            Ok(())
        }
        [2, 3, 3] => {
            let x = *tri.iter().find(|&&v| g.degree(v) == 2).unwrap();
            let (y, z) = match tri.iter().copied().filter(|&v| v != x).collect::<Vec<_>>()[..] {
                [y, z] => (y, z),
                _ => unreachable!(),
            };
            let u = outside(y)[0];
            let w = outside(z)[0];
            if u == w {
                let bb = u;
                if g.degree(bb) != 2 || n != 4 {
                    return Err(b.violation(
                        format!(
                            "common neighbor {bb} of {y},{z} has degree {} in a graph on {n} vertices",
                            g.degree(bb)
                        ),
                        g,
                    ));
                }
                for (p, q) in [(x, y), (y, z), (z, bb)] {
                    b.label(sub.orig(p, q), Part::Tree);
                }
                for (p, q) in [(x, z), (y, bb)] {
                    b.label(sub.orig(p, q), Part::Matching);
                }
                b.record(
                    CaseTag::Tri233K4MinusEdge,
                    [x, y, z, bb].iter().map(|&v| sub.rep[v]).collect(),
                    Vec::new(),
                );
                return Ok(());
            }

            let (h, map, merged) = g.identify_vertices(&tri);
            let mut merged_origin = HashMap::new();
            for (new_edge, olds) in &merged {
                if olds.len() != 1 {
                    return Err(b.violation(
                        format!("merging {x},{y},{z} collapsed parallel edges"),
                        g,
                    ));
                }
                merged_origin.insert(*new_edge, olds[0]);
            }
            let lift = Lift {
                trace_index: b.record(
                    // resolved to A1 or A2 once the merged graph is solved
                    CaseTag::Tri233IdentifyA2,
                    [x, y, z].iter().map(|&v| sub.rep[v]).collect(),
                    Vec::new(),
                ),
                xy: sub.orig(x, y),
                yz: sub.orig(y, z),
                xz: sub.orig(x, z),
                ext_y: sub.orig(y, u),
                ext_z: sub.orig(z, w),
            };
            stack.push(Task::Lift(lift));
            stack.push(Task::Solve(sub.child(h, &map, Some(&merged_origin))));
            Ok(())
        }
        pattern => Err(b.violation(
            format!(
                "triangle {},{},{} has degree pattern {pattern:?} in a 2-edge-connected graph on {n} vertices",
                t.x, t.y, t.z
            ),
            g,
        )),
    }
}

fn lift_triangle(lift: Lift, b: &mut Builder, g: &Graph) -> Result<(), ClawFreeError> {
    let Lift {
        trace_index,
        xy,
        yz,
        xz,
        ext_y,
        ext_z,
    } = lift;
    let tree_before = b.d.tree().len();
    let (tag, path_a, matched) = match (b.d.part_of(ext_y), b.d.part_of(ext_z)) {
        (Some(Part::Tree), Some(Part::Tree)) => (CaseTag::Tri233IdentifyA2, xy, xz),
        (Some(Part::Matching), Some(Part::Tree)) => (CaseTag::Tri233IdentifyA1, xy, xz),
        // y's external edge is the tree one, so y plays z
        (Some(Part::Tree), Some(Part::Matching)) => (CaseTag::Tri233IdentifyA1, xz, xy),
        (py, pz) => {
            return Err(b.violation(
                format!("merged vertex has edges labeled {py:?} ({ext_y}) and {pz:?} ({ext_z})"),
                g,
            ))
        }
    };
    for v in [xy, yz, xz].iter().flat_map(|e| [e.u(), e.v()]) {
        if b.cycle_deg[v] != 0 {
            return Err(b.violation(
                format!("vertex {v} of a merged triangle is on a 2-regular cycle"),
                g,
            ));
        }
    }
    if b.match_deg[matched.u()] != 0 || b.match_deg[matched.v()] != 0 {
        return Err(b.violation(
            format!("lifted matching edge {matched} meets another matching edge"),
            g,
        ));
    }
    b.label(path_a, Part::Tree);
    b.label(yz, Part::Tree);
    b.label(matched, Part::Matching);
    debug_assert_eq!(b.d.tree().len(), tree_before + 2);
    let entry = &mut b.trace.entries[trace_index];
    entry.tag = tag;
    entry.edges = vec![ext_y, ext_z];
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Clawfree,
    Exact,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Clawfree => "clawfree",
            Method::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AutoDecomposition {
    pub decomposition: Decomposition,
    pub method: Method,
    /// Present when the claw-free construction was used.
    pub trace: Option<CaseTrace>,
    /// Present when the exact search was used.
    pub stats: Option<SearchStats>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum AutoError {
    #[error(transparent)]
    ClawFree(#[from] ClawFreeError),
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error("graph has no good decomposition")]
    NotGood(SearchStats),
    #[error("search budget exhausted after {} nodes", .0.nodes)]
    BudgetExceeded(SearchStats),
}

/// Claw-free construction when it applies, exact search otherwise. The
/// result is verified before it is returned.
pub fn decompose_auto(g: &Graph, limits: SearchLimits) -> Result<AutoDecomposition, AutoError> {
    check_search_input(g)?;
    let result = if find_claw(g).is_none() {
        let (decomposition, trace) = decompose_clawfree(g)?;
        AutoDecomposition {
            decomposition,
            method: Method::Clawfree,
            trace: Some(trace),
            stats: None,
        }
    } else {
        let out = find_good_decomposition(g, limits)?;
        match out.outcome {
            Outcome::Good(decomposition) => AutoDecomposition {
                decomposition,
                method: Method::Exact,
                trace: None,
                stats: Some(out.stats),
            },
            Outcome::NotGood => return Err(AutoError::NotGood(out.stats)),
            Outcome::BudgetExceeded => return Err(AutoError::BudgetExceeded(out.stats)),
        }
    };
    assert!(
        verify(g, &result.decomposition).ok,
        "auto result must verify"
    );
    Ok(result)
}
