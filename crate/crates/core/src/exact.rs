//! Exhaustive backtracking search for good decompositions.
//!
//! Edges are labeled one at a time in DFS-discovery order from vertex 0,
//! trying tree, then two-regular, then matching. A partial labeling is
//! abandoned as soon as
//!
//! * a vertex would carry two matching edges or three two-regular edges,
//! * a vertex has all incident edges labeled and exactly one of them is
//!   two-regular,
//! * a tree edge would close a cycle (union-find with rollback),
//! * the tree can no longer reach `n - 1` edges, or
//! * a vertex has no tree edge and no unlabeled edge left.
//!
//! `NotGood` is only returned after the whole space has been exhausted;
//! hitting a limit always yields `BudgetExceeded`.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::decomposition::{verify, Decomposition, Part};
use crate::error::{BudgetExceeded, PreconditionError};
use crate::graph::{Edge, Graph};
use crate::predicates::first_overfull_vertex;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

/// Node and wall-clock caps for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: DEFAULT_MAX_NODES,
            time_limit: None,
        }
    }
}

impl SearchLimits {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchLimits {
            max_nodes,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Successful label assignments.
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Good(Decomposition),
    NotGood,
    BudgetExceeded,
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Good(_) => "good",
            Outcome::NotGood => "not_good",
            Outcome::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Connected, nonempty and subcubic.
pub fn check_search_input(g: &Graph) -> Result<(), PreconditionError> {
    if g.n() == 0 {
        return Err(PreconditionError::Empty);
    }
    if let Some((vertex, degree)) = first_overfull_vertex(g) {
        return Err(PreconditionError::NotSubcubic { vertex, degree });
    }
    let components = g.components().len();
    if components > 1 {
        return Err(PreconditionError::Disconnected { components });
    }
    Ok(())
}

/// Finds a good decomposition of `g` or proves there is none.
pub fn find_good_decomposition(
    g: &Graph,
    limits: SearchLimits,
) -> Result<SearchOutcome, PreconditionError> {
    check_search_input(g)?;
    let mut search = Search::new(g, limits);
    let result = search.run(true);
    let stats = search.stats();
    let outcome = match result {
        Err(_) => Outcome::BudgetExceeded,
        Ok(()) => match search.found.take() {
            Some(d) => {
                let report = verify(g, &d);
                assert!(
                    report.ok,
                    "exact search produced an invalid decomposition: {report}"
                );
                Outcome::Good(d)
            }
            None => Outcome::NotGood,
        },
    };
    Ok(SearchOutcome { outcome, stats })
}

/// Number of distinct labelings of `E(g)` that form good decompositions.
pub fn count_good_decompositions(g: &Graph, limits: SearchLimits) -> Result<u64, CountError> {
    check_search_input(g)?;
    let mut search = Search::new(g, limits);
    search.run(false)?;
    Ok(search.count)
}

/// Edges in the order a DFS from vertex 0 first meets them.
pub fn dfs_edge_order(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    let mut listed = std::collections::HashSet::with_capacity(g.edge_count());
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push((root, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, idx) = *frame;
            let Some(&w) = g.neighbors(v).get(idx) else {
                stack.pop();
                continue;
            };
            frame.1 += 1;
            let e = Edge::new(v, w).unwrap();
            if listed.insert(e) {
                order.push(e);
            }
            if !visited[w] {
                visited[w] = true;
                stack.push((w, 0));
            }
        }
    }
    order
}

const BRANCH_ORDER: [Part; 3] = [Part::Tree, Part::TwoRegular, Part::Matching];

/// Union-find with an undo log; no path compression so every union can be
/// reverted in O(1).
struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        RollbackUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
        true
    }

    fn undo(&mut self) {
        let (ra, rb) = self.history.pop().expect("nothing to undo");
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }
}

struct Search<'a> {
    g: &'a Graph,
    limits: SearchLimits,
    start: Instant,
    edges: Vec<Edge>,
    labels: Vec<Option<Part>>,
    tree_deg: Vec<u8>,
    match_deg: Vec<u8>,
    cycle_deg: Vec<u8>,
    unlabeled: Vec<u8>,
    tree_count: usize,
    uf: RollbackUnionFind,
    nodes: u64,
    count: u64,
    found: Option<Decomposition>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, limits: SearchLimits) -> Self {
        let n = g.n();
        let edges = dfs_edge_order(g);
        Search {
            g,
            limits,
            start: Instant::now(),
            labels: vec![None; edges.len()],
            edges,
            tree_deg: vec![0; n],
            match_deg: vec![0; n],
            cycle_deg: vec![0; n],
            unlabeled: (0..n).map(|v| g.degree(v) as u8).collect(),
            tree_count: 0,
            uf: RollbackUnionFind::new(n),
            nodes: 0,
            count: 0,
            found: None,
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            elapsed: self.start.elapsed(),
        }
    }

    fn over_budget(&self) -> bool {
        if self.nodes > self.limits.max_nodes {
            return true;
        }
        match self.limits.time_limit {
            Some(t) if self.nodes.is_multiple_of(4096) => self.start.elapsed() > t,
            _ => false,
        }
    }

    /// Depth-first over edge labels with an explicit choice stack. With
    /// `stop_at_first`, stops at the first complete labeling.
    fn run(&mut self, stop_at_first: bool) -> Result<(), BudgetExceeded> {
        let m = self.edges.len();
        let mut next_choice = vec![0usize; m + 1];
        let mut depth = 0;
        loop {
            if depth == m {
                self.count += 1;
                if stop_at_first {
                    self.found = Some(self.current_decomposition());
                    return Ok(());
                }
                if depth == 0 {
                    return Ok(());
                }
                depth -= 1;
                self.unapply(depth);
                continue;
            }
            let mut advanced = false;
            while next_choice[depth] < BRANCH_ORDER.len() {
                let part = BRANCH_ORDER[next_choice[depth]];
                next_choice[depth] += 1;
                if self.try_apply(depth, part) {
                    self.nodes += 1;
                    if self.over_budget() {
                        return Err(BudgetExceeded { nodes: self.nodes });
                    }
                    depth += 1;
                    next_choice[depth] = 0;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                if depth == 0 {
                    return Ok(());
                }
                depth -= 1;
                self.unapply(depth);
            }
        }
    }

    fn try_apply(&mut self, i: usize, part: Part) -> bool {
        let e = self.edges[i];
        let (u, v) = e.endpoints();
        let need_tree = self.g.n() - 1;
        match part {
            Part::Tree => {
                if self.tree_count == need_tree || !self.uf.union(u, v) {
                    return false;
                }
                self.tree_count += 1;
                self.tree_deg[u] += 1;
                self.tree_deg[v] += 1;
            }
            Part::TwoRegular => {
                if self.cycle_deg[u] == 2 || self.cycle_deg[v] == 2 {
                    return false;
                }
                self.cycle_deg[u] += 1;
                self.cycle_deg[v] += 1;
            }
            Part::Matching => {
                if self.match_deg[u] == 1 || self.match_deg[v] == 1 {
                    return false;
                }
                self.match_deg[u] += 1;
                self.match_deg[v] += 1;
            }
        }
        self.unlabeled[u] -= 1;
        self.unlabeled[v] -= 1;
        self.labels[i] = Some(part);

        let remaining = self.edges.len() - i - 1;
        let feasible = self.tree_count + remaining >= need_tree
            && self.vertex_feasible(u)
            && self.vertex_feasible(v);
        if !feasible {
            self.unapply(i);
        }
        feasible
    }

    fn vertex_feasible(&self, w: usize) -> bool {
        let open = self.unlabeled[w];
        !(self.cycle_deg[w] == 1 && open == 0) && self.tree_deg[w] + open > 0
    }

    fn unapply(&mut self, i: usize) {
        let e = self.edges[i];
        let (u, v) = e.endpoints();
        let part = self.labels[i].take().expect("edge not labeled");
        match part {
            Part::Tree => {
                self.uf.undo();
                self.tree_count -= 1;
                self.tree_deg[u] -= 1;
                self.tree_deg[v] -= 1;
            }
            Part::TwoRegular => {
                self.cycle_deg[u] -= 1;
                self.cycle_deg[v] -= 1;
            }
            Part::Matching => {
                self.match_deg[u] -= 1;
                self.match_deg[v] -= 1;
            }
        }
        self.unlabeled[u] += 1;
        self.unlabeled[v] += 1;
    }

    fn current_decomposition(&self) -> Decomposition {
        let mut d = Decomposition::default();
        for (e, label) in self.edges.iter().zip(&self.labels) {
            d.insert(*e, label.expect("complete labeling"))
                .expect("each edge labeled once");
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, petersen};

    fn good(g: &Graph) -> Decomposition {
        match find_good_decomposition(g, SearchLimits::default())
            .unwrap()
            .outcome
        {
            Outcome::Good(d) => d,
            other => panic!("expected good, got {other:?}"),
        }
    }

    #[test]
    fn k4_is_good() {
        let g = complete(4).unwrap();
        assert!(verify(&g, &good(&g)).ok);
    }

    #[test]
    fn petersen_and_k33_are_good() {
        for g in [petersen(), complete_bipartite(3, 3).unwrap()] {
            assert!(verify(&g, &good(&g)).ok);
        }
    }

    #[test]
    fn c5_path_plus_matching() {
        let g = cycle(5).unwrap();
        let d = good(&g);
        assert_eq!(
            (d.tree().len(), d.matching().len(), d.two_regular().len()),
            (4, 1, 0)
        );
    }

    #[test]
    fn counts_on_tiny_graphs() {
        let limits = SearchLimits::default();
        assert_eq!(count_good_decompositions(&cycle(3).unwrap(), limits), Ok(3));
        assert_eq!(
            count_good_decompositions(&complete(2).unwrap(), limits),
            Ok(1)
        );
        assert_eq!(count_good_decompositions(&Graph::empty(1), limits), Ok(1));
    }

    #[test]
    fn single_vertex_is_good_with_nothing() {
        assert_eq!(good(&Graph::empty(1)), Decomposition::default());
    }

    #[test]
    fn preconditions() {
        let limits = SearchLimits::default();
        assert_eq!(
            find_good_decomposition(&Graph::empty(0), limits),
            Err(PreconditionError::Empty)
        );
        assert_eq!(
            find_good_decomposition(&Graph::empty(2), limits),
            Err(PreconditionError::Disconnected { components: 2 })
        );
        let k5 =
            Graph::from_edge_list(5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
        assert_eq!(
            find_good_decomposition(&k5, limits),
            Err(PreconditionError::NotSubcubic {
                vertex: 0,
                degree: 4
            })
        );
    }

    #[test]
    fn budget_is_not_not_good() {
        let out = find_good_decomposition(&petersen(), SearchLimits::nodes(3)).unwrap();
        assert_eq!(out.outcome, Outcome::BudgetExceeded);
        assert_eq!(out.stats.nodes, 4);
        assert_eq!(
            count_good_decompositions(&petersen(), SearchLimits::nodes(5)),
            Err(CountError::Budget(BudgetExceeded { nodes: 6 }))
        );
    }

    #[test]
    fn deterministic_stats() {
        let a = find_good_decomposition(&petersen(), SearchLimits::default()).unwrap();
        let b = find_good_decomposition(&petersen(), SearchLimits::default()).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.stats.nodes, b.stats.nodes);
    }

    #[test]
    fn dfs_order_keeps_prefix_connected() {
        let g = petersen();
        let order = dfs_edge_order(&g);
        assert_eq!(order.len(), 15);
        assert_eq!(order[0], Edge::new(0, 1).unwrap());
        let mut touched = vec![false; g.n()];
        touched[0] = true;
        for e in order {
            assert!(touched[e.u()] || touched[e.v()]);
            touched[e.u()] = true;
            touched[e.v()] = true;
        }
    }

    #[test]
    fn rollback_union_find() {
        let mut uf = RollbackUnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(uf.union(1, 3));
        assert!(!uf.union(0, 2));
        uf.undo();
        assert_ne!(uf.find(0), uf.find(2));
        assert_eq!(uf.find(2), uf.find(3));
    }

    // No connected subcubic graph is known to lack a good decomposition, so
    // exhaustion is exercised past the precondition check.
    #[test]
    fn exhausted_space_is_not_good() {
        let g = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        let mut search = Search::new(&g, SearchLimits::default());
        search.run(true).unwrap();
        assert!(search.found.is_none());
        let mut search = Search::new(&g, SearchLimits::default());
        search.run(false).unwrap();
        assert_eq!(search.count, 0);
    }
}
