use std::time::{Duration, Instant};

use clap::ValueEnum;
use gooddecomp_core::error::{ClawFreeError, PreconditionError};
use gooddecomp_core::{
    decompose_clawfree, find_good_decomposition, CaseTrace, Decomposition, Graph, Outcome,
    SearchLimits,
};
use serde_json::{json, Value};

use crate::{EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_SOFTWARE, EXIT_USAGE, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethod {
    Exact,
    Clawfree,
    /// Claw-free construction when it applies, exact search otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Good,
    NotGood,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Good => "good",
            Status::NotGood => "not_good",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

pub struct Solved {
    pub method: &'static str,
    pub status: Status,
    pub decomposition: Option<Decomposition>,
    pub trace: Option<CaseTrace>,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl Solved {
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Good => EXIT_OK,
            Status::NotGood => EXIT_FAIL,
            Status::BudgetExceeded => EXIT_BUDGET,
        }
    }

    pub fn to_json(&self, graph6: &str, with_decomposition: bool, with_trace: bool) -> Value {
        let mut out = json!({
            "schema": SCHEMA,
            "graph6": graph6,
            "method": self.method,
            "outcome": self.status.as_str(),
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        });
        if with_decomposition {
            out["decomposition"] = json!(self.decomposition);
        }
        if with_trace {
            if let Some(t) = &self.trace {
                out["trace"] = json!(t);
            }
        }
        out
    }
}

/// Solver refusal: a precondition or an internal contradiction.
pub struct SolveError {
    pub code: &'static str,
    pub message: String,
    pub detail: Value,
}

impl SolveError {
    pub fn exit_code(&self) -> u8 {
        if self.code == "THEOREM_VIOLATION" {
            EXIT_SOFTWARE
        } else {
            EXIT_USAGE
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "code": self.code, "message": self.message, "detail": self.detail })
    }
}

impl From<PreconditionError> for SolveError {
    fn from(e: PreconditionError) -> Self {
        let detail = match &e {
            PreconditionError::NotClawFree(w) => json!({ "claw": w }),
            PreconditionError::NotSubcubic { vertex, degree } => {
                json!({ "vertex": vertex, "degree": degree })
            }
            PreconditionError::Disconnected { components } => json!({ "components": components }),
            _ => Value::Null,
        };
        SolveError {
            code: e.code(),
            message: e.to_string(),
            detail,
        }
    }
}

impl From<ClawFreeError> for SolveError {
    fn from(e: ClawFreeError) -> Self {
        match e {
            ClawFreeError::Precondition(p) => p.into(),
            ClawFreeError::TheoremViolation(v) => SolveError {
                code: "THEOREM_VIOLATION",
                message: v.to_string(),
                detail: json!({ "reason": v.reason, "graph6": v.graph6, "trace": v.trace }),
            },
        }
    }
}

pub fn solve(g: &Graph, method: SolveMethod, limits: SearchLimits) -> Result<Solved, SolveError> {
    let use_clawfree = match method {
        SolveMethod::Clawfree => true,
        SolveMethod::Exact => false,
        SolveMethod::Auto => {
            gooddecomp_core::exact::check_search_input(g)?;
            gooddecomp_core::predicates::is_claw_free(g)
        }
    };
    if use_clawfree {
        let start = Instant::now();
        let (d, trace) = decompose_clawfree(g)?;
        return Ok(Solved {
            method: "clawfree",
            status: Status::Good,
            decomposition: Some(d),
            trace: Some(trace),
            nodes: 0,
            elapsed: start.elapsed(),
        });
    }
    let out = find_good_decomposition(g, limits)?;
    let (status, decomposition) = match out.outcome {
        Outcome::Good(d) => (Status::Good, Some(d)),
        Outcome::NotGood => (Status::NotGood, None),
        Outcome::BudgetExceeded => (Status::BudgetExceeded, None),
    };
    Ok(Solved {
        method: "exact",
        status,
        decomposition,
        trace: None,
        nodes: out.stats.nodes,
        elapsed: out.stats.elapsed,
    })
}
