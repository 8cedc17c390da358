//! Good decompositions: a spanning tree, a matching and a 2-regular
//! subgraph partitioning the edge set. The verifier here is the ground
//! truth for "good".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DecompositionError;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Tree,
    Matching,
    TwoRegular,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Tree, Part::Matching, Part::TwoRegular];

    pub fn as_str(self) -> &'static str {
        match self {
            Part::Tree => "tree",
            Part::Matching => "matching",
            Part::TwoRegular => "two_regular",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Three pairwise disjoint sets of canonical edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    tree: BTreeSet<Edge>,
    matching: BTreeSet<Edge>,
    two_regular: BTreeSet<Edge>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    tree: Vec<Edge>,
    matching: Vec<Edge>,
    two_regular: Vec<Edge>,
}

impl Decomposition {
    /// Fails if any edge is listed twice, within or across parts.
    pub fn new<T, M, C>(tree: T, matching: M, two_regular: C) -> Result<Self, DecompositionError>
    where
        T: IntoIterator<Item = Edge>,
        M: IntoIterator<Item = Edge>,
        C: IntoIterator<Item = Edge>,
    {
        let mut d = Decomposition::default();
        for (part, edges) in [
            (Part::Tree, tree.into_iter().collect::<Vec<_>>()),
            (Part::Matching, matching.into_iter().collect()),
            (Part::TwoRegular, two_regular.into_iter().collect()),
        ] {
            for e in edges {
                d.insert(e, part)?;
            }
        }
        Ok(d)
    }

    /// Builds from `(u, v)` pairs in any orientation.
    pub fn from_pairs(
        tree: &[(usize, usize)],
        matching: &[(usize, usize)],
        two_regular: &[(usize, usize)],
    ) -> Result<Self, DecompositionError> {
        let conv = |pairs: &[(usize, usize)]| -> Result<Vec<Edge>, DecompositionError> {
            pairs
                .iter()
                .map(|&(a, b)| Edge::new(a, b).ok_or(DecompositionError::Loop(a)))
                .collect()
        };
        Decomposition::new(conv(tree)?, conv(matching)?, conv(two_regular)?)
    }

    /// Adds `e` to `part`; an edge already present anywhere is an error.
    pub fn insert(&mut self, e: Edge, part: Part) -> Result<(), DecompositionError> {
        if self.part_of(e).is_some() {
            return Err(DecompositionError::DuplicateEdge(e));
        }
        self.part_mut(part).insert(e);
        Ok(())
    }

    /// Moves `e` to `part`, whatever part it was in before.
    pub fn reassign(&mut self, e: Edge, part: Part) {
        self.tree.remove(&e);
        self.matching.remove(&e);
        self.two_regular.remove(&e);
        self.part_mut(part).insert(e);
    }

    pub fn part_of(&self, e: Edge) -> Option<Part> {
        Part::ALL.into_iter().find(|&p| self.part(p).contains(&e))
    }

    pub fn part(&self, part: Part) -> &BTreeSet<Edge> {
        match part {
            Part::Tree => &self.tree,
            Part::Matching => &self.matching,
            Part::TwoRegular => &self.two_regular,
        }
    }

    fn part_mut(&mut self, part: Part) -> &mut BTreeSet<Edge> {
        match part {
            Part::Tree => &mut self.tree,
            Part::Matching => &mut self.matching,
            Part::TwoRegular => &mut self.two_regular,
        }
    }

    pub fn tree(&self) -> &BTreeSet<Edge> {
        &self.tree
    }

    pub fn matching(&self) -> &BTreeSet<Edge> {
        &self.matching
    }

    pub fn two_regular(&self) -> &BTreeSet<Edge> {
        &self.two_regular
    }

    pub fn edge_count(&self) -> usize {
        self.tree.len() + self.matching.len() + self.two_regular.len()
    }

    /// Every edge with its part, in canonical edge order.
    pub fn labeled_edges(&self) -> BTreeMap<Edge, Part> {
        Part::ALL
            .into_iter()
            .flat_map(|p| self.part(p).iter().map(move |&e| (e, p)))
            .collect()
    }

    /// Splits the 2-regular part into its cycles, each starting at its
    /// smallest vertex. `None` if some vertex has degree other than 0 or 2
    /// in that part.
    pub fn two_regular_cycles(&self) -> Option<Vec<Vec<usize>>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &self.two_regular {
            adj.entry(e.u()).or_default().push(e.v());
            adj.entry(e.v()).or_default().push(e.u());
        }
        if adj.values().any(|nb| nb.len() != 2) {
            return None;
        }
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let (mut prev, mut cur) = (start, adj[&start][0]);
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                let nb = &adj[&cur];
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                (prev, cur) = (cur, next);
            }
            cycles.push(cycle);
        }
        Some(cycles)
    }

    /// Canonical JSON: `{"tree":[[u,v],...],"matching":[...],"two_regular":[...]}`
    /// with every list sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("edges always serialize")
    }

    /// Parses the JSON shape written by [`Decomposition::to_json`]. Extra
    /// keys are ignored; non-canonical pairs and repeated edges are errors.
    pub fn from_json(text: &str) -> Result<Self, DecompositionError> {
        let wire: Wire = serde_json::from_str(text)?;
        Decomposition::new(wire.tree, wire.matching, wire.two_regular)
    }

    fn to_wire(&self) -> Wire {
        Wire {
            tree: self.tree.iter().copied().collect(),
            matching: self.matching.iter().copied().collect(),
            two_regular: self.two_regular.iter().copied().collect(),
        }
    }
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        Decomposition::new(wire.tree, wire.matching, wire.two_regular)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    NotPartitionMissing,
    NotPartitionOverlap,
    NotPartitionForeign,
    TreeWrongSize,
    TreeCyclic,
    TreeDisconnected,
    MatchingSharedVertex,
    TwoRegularBadDegree,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NotPartitionMissing => "NOT_PARTITION_MISSING",
            ViolationCode::NotPartitionOverlap => "NOT_PARTITION_OVERLAP",
            ViolationCode::NotPartitionForeign => "NOT_PARTITION_FOREIGN",
            ViolationCode::TreeWrongSize => "TREE_WRONG_SIZE",
            ViolationCode::TreeCyclic => "TREE_CYCLIC",
            ViolationCode::TreeDisconnected => "TREE_DISCONNECTED",
            ViolationCode::MatchingSharedVertex => "MATCHING_SHARED_VERTEX",
            ViolationCode::TwoRegularBadDegree => "TWO_REGULAR_BAD_DEGREE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub fn codes(&self) -> BTreeSet<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.code.as_str(), v.detail)?;
        }
        Ok(())
    }
}

/// Checks that `d` is a good decomposition of `g`. Reports every
/// violation found, not just the first.
pub fn verify(g: &Graph, d: &Decomposition) -> VerificationReport {
    let tree: Vec<Edge> = d.tree.iter().copied().collect();
    let matching: Vec<Edge> = d.matching.iter().copied().collect();
    let two_regular: Vec<Edge> = d.two_regular.iter().copied().collect();
    verify_parts(g, &tree, &matching, &two_regular)
}

/// [`verify`] over raw edge lists, which may repeat or overlap.
///
/// The spanning-tree test is "exactly n - 1 edges and acyclic"; a tree part
/// that is acyclic but too small additionally gets `TREE_DISCONNECTED`.
pub fn verify_parts(
    g: &Graph,
    tree: &[Edge],
    matching: &[Edge],
    two_regular: &[Edge],
) -> VerificationReport {
    let n = g.n();
    let mut violations = Vec::new();
    let mut push = |code, detail: String| violations.push(Violation { code, detail });

    // partition
    let mut seen: BTreeMap<Edge, Part> = BTreeMap::new();
    for (part, edges) in [
        (Part::Tree, tree),
        (Part::Matching, matching),
        (Part::TwoRegular, two_regular),
    ] {
        for &e in edges {
            if !g.has_edge(e.u(), e.v()) {
                push(
                    ViolationCode::NotPartitionForeign,
                    format!("{e} in {part} is not an edge of the graph"),
                );
            }
            if let Some(prev) = seen.insert(e, part) {
                push(
                    ViolationCode::NotPartitionOverlap,
                    format!("{e} appears in {prev} and {part}"),
                );
            }
        }
    }
    for e in g.edges() {
        if !seen.contains_key(&e) {
            push(
                ViolationCode::NotPartitionMissing,
                format!("{e} is in no part"),
            );
        }
    }

    // spanning tree
    let expected = n.saturating_sub(1);
    if tree.len() != expected {
        push(
            ViolationCode::TreeWrongSize,
            format!("tree has {} edges, expected {expected}", tree.len()),
        );
    }
    let mut forest = ForestCheck::new(n);
    let mut cyclic = false;
    for &e in tree.iter().filter(|e| e.v() < n) {
        if !forest.union(e.u(), e.v()) {
            cyclic = true;
            push(
                ViolationCode::TreeCyclic,
                format!("tree edge {e} closes a cycle"),
            );
        }
    }
    if !cyclic && forest.components > 1 {
        push(
            ViolationCode::TreeDisconnected,
            format!("tree leaves {} components", forest.components),
        );
    }

    // matching
    let mut matched: BTreeMap<usize, Edge> = BTreeMap::new();
    for &e in matching {
        for w in [e.u(), e.v()] {
            if let Some(prev) = matched.insert(w, e) {
                if prev != e {
                    push(
                        ViolationCode::MatchingSharedVertex,
                        format!("matching edges {prev} and {e} share vertex {w}"),
                    );
                }
            }
        }
    }

    // 2-regular
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in two_regular {
        *degree.entry(e.u()).or_default() += 1;
        *degree.entry(e.v()).or_default() += 1;
    }
    for (w, d) in degree {
        if d != 2 {
            push(
                ViolationCode::TwoRegularBadDegree,
                format!("vertex {w} has degree {d} in the 2-regular part"),
            );
        }
    }

    VerificationReport {
        ok: violations.is_empty(),
        violations,
    }
}

struct ForestCheck {
    parent: Vec<usize>,
    components: usize,
}

impl ForestCheck {
    fn new(n: usize) -> Self {
        ForestCheck {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    fn e(u: usize, v: usize) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn triangle_good() -> Decomposition {
        Decomposition::from_pairs(&[(0, 1), (1, 2)], &[(0, 2)], &[]).unwrap()
    }

    fn k4_star_triangle() -> Decomposition {
        Decomposition::from_pairs(&[(0, 1), (0, 2), (0, 3)], &[], &[(1, 2), (1, 3), (2, 3)])
            .unwrap()
    }

    #[test]
    fn triangle_tree_plus_matching() {
        assert!(verify(&cycle(3).unwrap(), &triangle_good()).ok);
    }

    #[test]
    fn k4_star_plus_triangle() {
        let r = verify(&complete(4).unwrap(), &k4_star_triangle());
        assert!(r.ok, "{r}");
        assert_eq!(
            k4_star_triangle().two_regular_cycles(),
            Some(vec![vec![1, 2, 3]])
        );
    }

    #[test]
    fn single_two_regular_edge_rejected() {
        let d = Decomposition::from_pairs(&[(0, 1), (1, 2)], &[], &[(0, 2)]).unwrap();
        let r = verify(&cycle(3).unwrap(), &d);
        assert!(!r.ok);
        assert_eq!(
            r.codes(),
            BTreeSet::from([ViolationCode::TwoRegularBadDegree])
        );
        assert_eq!(r.violations.len(), 2);
        assert_eq!(d.two_regular_cycles(), None);
    }

    #[test]
    fn c4_with_chord() {
        let g = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let d =
            Decomposition::from_pairs(&[(0, 1), (0, 2), (2, 3)], &[(1, 2), (0, 3)], &[]).unwrap();
        assert!(verify(&g, &d).ok);
    }

    #[test]
    fn reports_every_violation() {
        let g = cycle(4).unwrap();
        // tree 01,12 too small; matching 23,03 shares 3; edge 02 foreign
        let d = Decomposition::from_pairs(&[(0, 1), (1, 2)], &[(2, 3), (0, 3)], &[(0, 2)]).unwrap();
        let r = verify(&g, &d);
        assert_eq!(
            r.codes(),
            BTreeSet::from([
                ViolationCode::NotPartitionForeign,
                ViolationCode::TreeWrongSize,
                ViolationCode::TreeDisconnected,
                ViolationCode::MatchingSharedVertex,
                ViolationCode::TwoRegularBadDegree,
            ])
        );
    }

    #[test]
    fn missing_overlap_and_cycle() {
        let g = cycle(3).unwrap();
        let r = verify_parts(&g, &[e(0, 1), e(1, 2), e(0, 2)], &[e(0, 2)], &[]);
        assert!(r.has(ViolationCode::TreeCyclic));
        assert!(r.has(ViolationCode::TreeWrongSize));
        assert!(r.has(ViolationCode::NotPartitionOverlap));
        assert!(!r.has(ViolationCode::TreeDisconnected));

        let r = verify_parts(&g, &[e(0, 1), e(1, 2)], &[], &[]);
        assert_eq!(
            r.codes(),
            BTreeSet::from([ViolationCode::NotPartitionMissing])
        );
    }

    #[test]
    fn trivial_graphs() {
        assert!(verify(&Graph::empty(1), &Decomposition::default()).ok);
        assert!(verify(&Graph::empty(0), &Decomposition::default()).ok);
        let k2 = complete(2).unwrap();
        assert!(
            verify(
                &k2,
                &Decomposition::from_pairs(&[(0, 1)], &[], &[]).unwrap()
            )
            .ok
        );
        assert!(
            !verify(
                &k2,
                &Decomposition::from_pairs(&[], &[(0, 1)], &[]).unwrap()
            )
            .ok
        );
    }

    #[test]
    fn json_format() {
        assert_eq!(
            triangle_good().to_json(),
            r#"{"tree":[[0,1],[1,2]],"matching":[[0,2]],"two_regular":[]}"#
        );
        assert_eq!(
            Decomposition::default().to_json(),
            r#"{"tree":[],"matching":[],"two_regular":[]}"#
        );
        let d = k4_star_triangle();
        assert_eq!(Decomposition::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn json_sorted_regardless_of_input_order() {
        let d = Decomposition::from_json(
            r#"{"tree":[[1,2],[0,1]],"matching":[[0,2]],"two_regular":[],"schema":1}"#,
        )
        .unwrap();
        assert_eq!(d, triangle_good());
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            Decomposition::from_json("{"),
            Err(DecompositionError::Json(_))
        ));
        assert!(matches!(
            Decomposition::from_json(r#"{"tree":[[1,0]],"matching":[],"two_regular":[]}"#),
            Err(DecompositionError::Json(_))
        ));
        assert!(matches!(
            Decomposition::from_json(r#"{"tree":[[0,1]],"matching":[[0,1]],"two_regular":[]}"#),
            Err(DecompositionError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Decomposition::from_json(r#"{"tree":[[0,1]],"matching":[]}"#),
            Err(DecompositionError::Json(_))
        ));
    }

    #[test]
    fn reassign_moves_edge() {
        let mut d = triangle_good();
        d.reassign(e(0, 2), Part::TwoRegular);
        assert_eq!(d.part_of(e(0, 2)), Some(Part::TwoRegular));
        assert!(d.matching().is_empty());
        assert_eq!(d.edge_count(), 3);
    }
}
