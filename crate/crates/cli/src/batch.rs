use std::io::{self, BufRead, Write};

use gooddecomp_core::predicates::{self, DegreeClass};
use gooddecomp_core::{parse_graph6, Graph, SearchLimits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::solve::{solve, SolveMethod, Status};
use crate::SCHEMA;

/// Lines handed to the pool at a time; bounds memory on long streams.
const CHUNK_PER_JOB: usize = 256;

pub struct Options {
    pub method: SolveMethod,
    pub limits: SearchLimits,
    pub with_decomposition: bool,
    pub cycle_budget: u64,
}

#[derive(Default)]
struct Summary {
    records: usize,
    good: usize,
    not_good: usize,
    budget_exceeded: usize,
    errors: usize,
}

struct Record {
    value: Value,
    status: Option<Status>,
}

pub fn run(
    input: impl BufRead,
    out: &mut impl Write,
    jobs: usize,
    opts: &Options,
) -> io::Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(io::Error::other)?;
    let mut summary = Summary::default();
    let mut chunk: Vec<(usize, String)> = Vec::new();
    let chunk_len = CHUNK_PER_JOB * jobs;
    let mut lines = input.lines().enumerate();
    loop {
        let next = lines.next();
        let done = next.is_none();
        if let Some((i, line)) = next {
            let line = line?;
            if !line.trim().is_empty() {
                chunk.push((i + 1, line));
            }
        }
        if chunk.len() >= chunk_len || (done && !chunk.is_empty()) {
            let records: Vec<Record> =
                pool.install(|| chunk.par_iter().map(|(n, l)| record(*n, l, opts)).collect());
            for r in records {
                summary.records += 1;
                match r.status {
                    Some(Status::Good) => summary.good += 1,
                    Some(Status::NotGood) => summary.not_good += 1,
                    Some(Status::BudgetExceeded) => summary.budget_exceeded += 1,
                    None => summary.errors += 1,
                }
                writeln!(out, "{}", r.value)?;
            }
            chunk.clear();
        }
        if done {
            break;
        }
    }
    let s = summary;
    writeln!(
        out,
        "{}",
        json!({
            "schema": SCHEMA,
            "summary": {
                "records": s.records,
                "good": s.good,
                "not_good": s.not_good,
                "budget_exceeded": s.budget_exceeded,
                "errors": s.errors,
            }
        })
    )?;
    out.flush()
}

fn predicate_summary(g: &Graph, cycle_budget: u64) -> Value {
    let class = predicates::degree_class(g);
    json!({
        "subcubic": class.is_subcubic(),
        "cubic": class == DegreeClass::Cubic,
        "connected": predicates::is_connected(g),
        "claw_free": predicates::is_claw_free(g),
        "four_chordal": predicates::is_four_chordal(g, cycle_budget).ok(),
        "two_edge_connected": predicates::is_two_edge_connected(g),
    })
}

fn record(line_no: usize, line: &str, opts: &Options) -> Record {
    let text = line.trim();
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => {
            return Record {
                value: json!({
                    "schema": SCHEMA,
                    "line": line_no,
                    "graph6": text,
                    "error": { "code": "PARSE_ERROR", "message": e.to_string() },
                }),
                status: None,
            }
        }
    };
    let predicates = predicate_summary(&g, opts.cycle_budget);
    match solve(&g, opts.method, opts.limits) {
        Ok(solved) => {
            let mut value = solved.to_json(text, opts.with_decomposition, false);
            value["line"] = json!(line_no);
            value["predicates"] = predicates;
            Record {
                value,
                status: Some(solved.status),
            }
        }
        Err(err) => Record {
            value: json!({
                "schema": SCHEMA,
                "line": line_no,
                "graph6": text,
                "predicates": predicates,
                "error": err.to_json(),
            }),
            status: None,
        },
    }
}
