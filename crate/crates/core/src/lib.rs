//! Construction and verification of good decompositions of subcubic
//! graphs: edge partitions into a spanning tree, a matching and a 2-regular
//! subgraph (either of the last two may be empty).
//!
//! * [`decomposition::verify`] decides whether a partition is good.
//! * [`exact::find_good_decomposition`] searches exhaustively.
//! * [`clawfree::decompose_clawfree`] builds one directly for connected
//!   claw-free subcubic graphs and reports the reduction steps it took.

pub mod clawfree;
pub mod decomposition;
pub mod dot;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod predicates;

pub use clawfree::{
    decompose_auto, decompose_clawfree, AutoDecomposition, CaseTag, CaseTrace, Method, TraceEntry,
};
pub use decomposition::{verify, Decomposition, Part, VerificationReport, ViolationCode};
pub use error::{ClawFreeError, Graph6Error, GraphError, PreconditionError};
pub use exact::{
    count_good_decompositions, find_good_decomposition, Outcome, SearchLimits, SearchOutcome,
};
pub use graph::{Edge, Graph, VertexMap};
pub use graph6::{parse_graph6, write_graph6};
