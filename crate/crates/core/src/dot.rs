//! Graphviz DOT export.
//!
//! Output is an undirected `graph G { ... }` listing every vertex, then
//! every edge in canonical order. With a decomposition each edge carries
//! `part`, `color` and `style` attributes:
//!
//! | part          | color   | style    |
//! |---------------|---------|----------|
//! | `tree`        | `black` | `bold`   |
//! | `matching`    | `blue`  | `dashed` |
//! | `two_regular` | `red`   | `solid`  |

use std::fmt::Write;

use crate::decomposition::{verify, Decomposition, Part};
use crate::error::InvalidDecomposition;
use crate::graph::Graph;

pub fn part_style(part: Part) -> (&'static str, &'static str) {
    match part {
        Part::Tree => ("black", "bold"),
        Part::Matching => ("blue", "dashed"),
        Part::TwoRegular => ("red", "solid"),
    }
}

/// Renders `g`, styling edges by part when `d` is given. `d` must verify
/// against `g`.
pub fn to_dot(g: &Graph, d: Option<&Decomposition>) -> Result<String, InvalidDecomposition> {
    let labels = match d {
        Some(d) => {
            let report = verify(g, d);
            if !report.ok {
                return Err(InvalidDecomposition(report));
            }
            Some(d.labeled_edges())
        }
        None => None,
    };
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        match labels.as_ref().map(|l| l[&e]) {
            Some(part) => {
                let (color, style) = part_style(part);
                writeln!(
                    out,
                    "  {} -- {} [part=\"{part}\", color=\"{color}\", style=\"{style}\"];",
                    e.u(),
                    e.v()
                )
                .unwrap();
            }
            None => writeln!(out, "  {} -- {};", e.u(), e.v()).unwrap(),
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn plain_triangle() {
        let dot = to_dot(&cycle(3).unwrap(), None).unwrap();
        assert_eq!(
            dot,
            "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n"
        );
    }

    #[test]
    fn styled_triangle() {
        let d = Decomposition::from_pairs(&[(0, 1), (1, 2)], &[(0, 2)], &[]).unwrap();
        let dot = to_dot(&cycle(3).unwrap(), Some(&d)).unwrap();
        assert_eq!(dot.matches("part=\"tree\"").count(), 2);
        assert_eq!(dot.matches("part=\"matching\"").count(), 1);
        assert!(dot.contains("  0 -- 2 [part=\"matching\", color=\"blue\", style=\"dashed\"];\n"));
    }

    #[test]
    fn styled_k4() {
        let d =
            Decomposition::from_pairs(&[(0, 1), (0, 2), (0, 3)], &[], &[(1, 2), (1, 3), (2, 3)])
                .unwrap();
        let dot = to_dot(&complete(4).unwrap(), Some(&d)).unwrap();
        assert_eq!(dot.matches("part=\"tree\"").count(), 3);
        assert_eq!(dot.matches("part=\"two_regular\"").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 6);
    }

    #[test]
    fn rejects_bad_decomposition() {
        let d = Decomposition::from_pairs(&[(0, 1)], &[], &[]).unwrap();
        assert!(to_dot(&cycle(3).unwrap(), Some(&d)).is_err());
    }
}
