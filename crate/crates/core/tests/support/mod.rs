//! Brute-force oracles shared by the integration test targets.
#![allow(dead_code)]

use gooddecomp_core::generators::SampleRng;
use gooddecomp_core::{Edge, Graph};

/// graph6 encoder written without touching the library's bit indexing.
#[allow(clippy::needless_range_loop)]
pub fn encode_graph6(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n <= 62);
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i][j]);
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut out = String::new();
    out.push((63 + n as u8) as char);
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for &b in chunk {
            x = (x << 1) | b as u8;
        }
        out.push((63 + x) as char);
    }
    out
}

pub fn pairs(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().map(|e| e.endpoints()).collect()
}

fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

pub fn brute_bridges(g: &Graph) -> Vec<Edge> {
    let all = pairs(g);
    let base = component_count(g.n(), &all);
    let mut out = Vec::new();
    for (i, &(a, b)) in all.iter().enumerate() {
        let rest: Vec<_> = all
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        if component_count(g.n(), &rest) > base {
            out.push(Edge::new(a, b).unwrap());
        }
    }
    out
}

pub fn brute_has_claw(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nb = g.neighbors(c);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for k in j + 1..nb.len() {
                    let (a, b, d) = (nb[i], nb[j], nb[k]);
                    if !g.has_edge(a, b) && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return true;
                    }
                }
            }
        }
        false
    })
}

/// Whether some vertex subset of size > k induces a cycle. Exponential in n.
pub fn brute_has_induced_cycle_longer_than(g: &Graph, k: usize) -> bool {
    let n = g.n();
    assert!(n <= 20);
    (0u32..1 << n).any(|mask| {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() <= k || vs.len() < 3 {
            return false;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        if vs
            .iter()
            .any(|&v| g.neighbors(v).iter().filter(|&&w| inside(w)).count() != 2)
        {
            return false;
        }
        let induced: Vec<(usize, usize)> = pairs(g)
            .into_iter()
            .filter(|&(a, b)| inside(a) && inside(b))
            .collect();
        // 2-regular and connected means a single cycle
        component_count(n, &induced) == n - vs.len() + 1
    })
}

/// Counts good decompositions by trying every one of the 3^|E| labelings.
pub fn naive_good_count(g: &Graph) -> u64 {
    let n = g.n();
    let edges = pairs(g);
    let m = edges.len();
    assert!(m <= 20);
    let mut labels = vec![0u8; m];
    let mut count = 0u64;
    let mut parent = vec![0usize; n];
    let mut mdeg = vec![0u8; n];
    let mut cdeg = vec![0u8; n];
    loop {
        if labelling_is_good(n, &edges, &labels, &mut parent, &mut mdeg, &mut cdeg) {
            count += 1;
        }
        let mut i = 0;
        while i < m && labels[i] == 2 {
            labels[i] = 0;
            i += 1;
        }
        if i == m {
            return count;
        }
        labels[i] += 1;
    }
}

fn labelling_is_good(
    n: usize,
    edges: &[(usize, usize)],
    labels: &[u8],
    parent: &mut [usize],
    mdeg: &mut [u8],
    cdeg: &mut [u8],
) -> bool {
    if labels.iter().filter(|&&l| l == 0).count() + 1 != n.max(1) {
        return false;
    }
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    mdeg.fill(0);
    cdeg.fill(0);
    for (&(a, b), &l) in edges.iter().zip(labels) {
        match l {
            0 => {
                let mut ra = a;
                while parent[ra] != ra {
                    ra = parent[ra];
                }
                let mut rb = b;
                while parent[rb] != rb {
                    rb = parent[rb];
                }
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
            1 => {
                mdeg[a] += 1;
                mdeg[b] += 1;
                if mdeg[a] > 1 || mdeg[b] > 1 {
                    return false;
                }
            }
            _ => {
                cdeg[a] += 1;
                cdeg[b] += 1;
            }
        }
    }
    cdeg.iter().all(|&d| d == 0 || d == 2)
}

/// Arbitrary simple graph (any degrees, possibly disconnected) on at most `max_n` vertices.
pub fn random_simple_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = SampleRng::new(seed);
    let n = 1 + rng.below(max_n);
    let density = 1 + rng.below(9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(10) < density {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges).unwrap()
}
