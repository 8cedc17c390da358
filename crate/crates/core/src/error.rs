use thiserror::Error;

use crate::clawfree::CaseTrace;
use crate::decomposition::VerificationReport;
use crate::graph::Edge;
use crate::predicates::ClawWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u},{v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("graph6 size form for n > 62 is not supported")]
    UnsupportedSize,
    #[error("graph has {0} vertices; graph6 output is limited to 62")]
    TooLarge(usize),
    #[error("expected {expected} data bytes for n = {n}, found {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("nonzero padding bits in the last data byte")]
    TrailingBits,
}

#[derive(Debug, Error)]
pub enum DecompositionError {
    #[error("malformed decomposition JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge {0} appears more than once")]
    DuplicateEdge(Edge),
    #[error("loop at vertex {0}")]
    Loop(usize),
}

#[derive(Debug, Clone, Error)]
#[error("decomposition does not verify against the graph: {0}")]
pub struct InvalidDecomposition(pub VerificationReport);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {nodes} nodes exhausted")]
pub struct BudgetExceeded {
    pub nodes: u64,
}

/// Input graph outside the class a solver accepts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex {vertex} has degree {degree} > 3")]
    NotSubcubic { vertex: usize, degree: usize },
    #[error("graph has an induced claw centered at {}", .0.center)]
    NotClawFree(ClawWitness),
    #[error("graph has {n} vertices; the limit is {max}")]
    TooLarge { n: usize, max: usize },
}

impl PreconditionError {
    pub fn code(&self) -> &'static str {
        match self {
            PreconditionError::Empty => "PRECONDITION_EMPTY",
            PreconditionError::Disconnected { .. } => "PRECONDITION_DISCONNECTED",
            PreconditionError::NotSubcubic { .. } => "PRECONDITION_NOT_SUBCUBIC",
            PreconditionError::NotClawFree(_) => "PRECONDITION_NOT_CLAWFREE",
            PreconditionError::TooLarge { .. } => "PRECONDITION_TOO_LARGE",
        }
    }
}

/// A branch the claw-free construction proves unreachable was reached.
#[derive(Debug, Clone, Error)]
#[error("THEOREM_VIOLATION: {reason} (graph6 {graph6:?}, {} trace entries)", trace.entries.len())]
pub struct TheoremViolation {
    pub reason: String,
    /// The subgraph being decomposed when the violation occurred, if it is
    /// small enough to encode.
    pub graph6: Option<String>,
    pub trace: CaseTrace,
}

#[derive(Debug, Clone, Error)]
pub enum ClawFreeError {
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
    #[error(transparent)]
    TheoremViolation(Box<TheoremViolation>),
}

impl ClawFreeError {
    pub fn code(&self) -> &'static str {
        match self {
            ClawFreeError::Precondition(p) => p.code(),
            ClawFreeError::TheoremViolation(_) => "THEOREM_VIOLATION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("triangle inflation needs a cubic graph")]
    NotCubic,
    #[error("no admissible graph after {0} attempts")]
    RetryCapExhausted(usize),
}
