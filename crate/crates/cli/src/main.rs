//! `partite`: command line driver for exact matching and intersection
//! computations on r-partite r-graphs.
//!
//! Every subcommand can emit a machine readable report with `--json`: the
//! first line is a header carrying timing and versions, the second is the
//! report body. Bodies are deterministic for a fixed command line, seed, and
//! `--threads 1`, so they can be compared byte for byte in CI.
//!
//! Exit codes: 0 on success (including inconclusive rows, which only warn),
//! 1 on usage or input errors, 2 when a verified statement is contradicted
//! inside its validity range, which signals an implementation bug.

mod commands;
mod report;

use std::process::exit;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "partite",
    version,
    about = "Exact matching and intersection computations on r-partite r-graphs"
)]
pub struct Cli {
    /// Emit a two line JSON report: a timing header, then a deterministic body
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for the randomized verification suites
    #[arg(long, global = true, default_value_t = 0x5EED)]
    pub seed: u64,

    /// Worker threads for the search value phase
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Search node budget; defaults to PARTITE_NODE_BUDGET, then 100000000
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Write a reference construction in the canonical text format
    Construct {
        /// Construction name: W_r, E, W_rt, or K_rt
        #[arg(long)]
        name: String,
        /// Number of parts, for symmetric sizes (with --n)
        #[arg(long)]
        r: Option<usize>,
        /// Common part size, for symmetric sizes (with --r)
        #[arg(long)]
        n: Option<u32>,
        /// Explicit comma separated part sizes, for example 4,3,2
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<u32>>,
        /// Matching level, required by E
        #[arg(long)]
        s: Option<usize>,
        /// Intersection level, required by W_rt and K_rt
        #[arg(long)]
        t: Option<usize>,
        /// Output file; the family goes to stdout when omitted
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },

    /// Report invariants of a family file: nu, tau, intersections, triviality
    Analyze {
        /// Family file in the canonical text format
        path: std::path::PathBuf,
        /// Also test non-triviality in the matching sense at this s
        #[arg(long)]
        s: Option<usize>,
        /// Also test non-triviality in the intersection sense at this t
        #[arg(long)]
        t: Option<usize>,
    },

    /// Apply one shift, or the full closure preserving non-triviality
    Shift {
        /// Family file in the canonical text format
        path: std::path::PathBuf,
        /// Intersection level guarded by the closure
        #[arg(long)]
        t: Option<usize>,
        /// Part of a single shift (with --symbol)
        #[arg(long)]
        part: Option<usize>,
        /// Symbol of a single shift (with --part)
        #[arg(long)]
        symbol: Option<u32>,
        /// Output file for the image family; stdout when omitted
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },

    /// Shrink a family with nu <= s < tau down to its base
    Base {
        /// Family file in the canonical text format
        path: std::path::PathBuf,
        /// Matching level
        #[arg(long)]
        s: usize,
    },

    /// Exact branch and bound search for the extremal family size
    Search {
        /// Problem kind: matching or intersecting
        #[arg(long)]
        mode: String,
        /// Number of parts, for symmetric sizes (with --n)
        #[arg(long)]
        r: Option<usize>,
        /// Common part size, for symmetric sizes (with --r)
        #[arg(long)]
        n: Option<u32>,
        /// Explicit comma separated part sizes
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<u32>>,
        /// Matching level (mode matching)
        #[arg(long)]
        s: Option<usize>,
        /// Intersection level (mode intersecting)
        #[arg(long)]
        t: Option<usize>,
        /// Refuse product spaces with more candidate vectors than this
        #[arg(long, default_value_t = 4096)]
        vector_cap: u64,
        /// Search every family, skipping the symmetry normalizations
        #[arg(long)]
        no_symmetry_breaking: bool,
    },

    /// Check theorem statements on parameter grids
    #[command(name = "verify-theorems")]
    VerifyTheorems {
        /// Suite to run: all-n, formulas, uniform, or random
        #[arg(long)]
        suite: String,
        /// Skip search points with more candidate vectors than this (all-n)
        #[arg(long, default_value_t = 64)]
        max_vectors: u64,
        /// Largest r in the grid (formulas, uniform)
        #[arg(long)]
        max_r: Option<usize>,
        /// Largest n in the grid (formulas)
        #[arg(long, default_value_t = 50)]
        max_n: u32,
        /// Repetitions per randomized check (random)
        #[arg(long, default_value_t = 100)]
        reps: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let started = Instant::now();
    match commands::run(&cli) {
        Ok(out) => {
            report::emit(cli.json, started, &out);
            exit(out.exit);
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            exit(1);
        }
    }
}
