//! graph6 encoding for graphs with at most 62 vertices.
//!
//! The size is one byte `n + 63`. The upper triangle of the adjacency matrix
//! follows, in column-major pair order `(0,1),(0,2),(1,2),(0,3),...`, packed
//! six bits per byte (most significant first), each byte offset by 63 and
//! the final group zero-padded.

use crate::error::Graph6Error;
use crate::graph::{Edge, Graph};

pub const HEADER: &str = ">>graph6<<";
pub const MAX_VERTICES: usize = 62;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let body = line.trim();
    let body = body.strip_prefix(HEADER).unwrap_or(body).as_bytes();
    let (&size, data) = body.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    if size == 126 {
        return Err(Graph6Error::UnsupportedSize);
    }
    let n = (size - 63) as usize;
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            n,
            expected,
            found: data.len(),
        });
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if !pairs.is_multiple_of(6) {
        let used = pairs % 6;
        let last = data[data.len() - 1] - 63;
        if last & ((1 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }
    Ok(Graph::from_edge_list(n, edges).expect("decoded pairs are in range"))
}

/// Encodes `g` without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut bytes = vec![0u8; data_len(n)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bytes[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(bytes.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(bytes.iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Position of the pair in the packed bit vector.
pub fn bit_index(e: Edge) -> usize {
    e.v() * (e.v() - 1) / 2 + e.u()
}
