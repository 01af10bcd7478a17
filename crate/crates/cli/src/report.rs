//! Report plumbing. Anything time dependent lives in the header; the body is
//! a pure function of the command line and seed (single threaded), so CI can
//! compare bodies byte for byte.

use std::time::Instant;

use serde_json::{json, Value};

pub const SCHEMA: &str = "partite-report/1";

/// What a subcommand hands back: a deterministic JSON body, the matching
/// human readable lines, and the process exit code.
pub struct Output {
    pub body: Value,
    pub human: Vec<String>,
    pub exit: i32,
}

impl Output {
    pub fn new(body: Value, human: Vec<String>) -> Self {
        Output {
            body,
            human,
            exit: 0,
        }
    }
}

pub fn emit(json_mode: bool, started: Instant, out: &Output) {
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    if json_mode {
        let header = json!({
            "schema": SCHEMA,
            "cli_version": env!("CARGO_PKG_VERSION"),
            "core_version": partite_core::VERSION,
            "wall_ms": wall_ms,
        });
        println!("{header}");
        println!("{}", out.body);
    } else {
        for line in &out.human {
            println!("{line}");
        }
        // diagnostics only, so piping stdout stays clean
        eprintln!("wall time: {wall_ms:.1} ms");
    }
}

/// Space separated sizes for human lines.
pub fn sizes_text(sizes: &[u32]) -> String {
    sizes
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
