//! One function per subcommand, each returning a deterministic JSON body plus
//! the human rendering of the same facts.

use std::path::Path;

use serde_json::{json, Value};

use partite_core::analysis;
use partite_core::constructions;
use partite_core::formulas::{self, Formula, FormulaValue};
use partite_core::io;
use partite_core::random::{
    random_family, random_nontrivial_t_intersecting, random_spec, rng_from_seed,
};
use partite_core::search::{SearchOptions, SearchProblem};
use partite_core::shifting;
use partite_core::sunflower;
use partite_core::theorems::{self, Regime, TheoremId, Verdict};
use partite_core::{Family, PartSpec};

use crate::report::{sizes_text, Output};
use crate::{Cli, Cmd};

type CmdResult = Result<Output, String>;

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Cmd::Construct {
            name,
            r,
            n,
            sizes,
            s,
            t,
            out,
        } => cmd_construct(cli, name, *r, *n, sizes.clone(), *s, *t, out.as_deref()),
        Cmd::Analyze { path, s, t } => cmd_analyze(path, *s, *t),
        Cmd::Shift {
            path,
            t,
            part,
            symbol,
            out,
        } => cmd_shift(cli, path, *t, *part, *symbol, out.as_deref()),
        Cmd::Base { path, s } => cmd_base(path, *s),
        Cmd::Search {
            mode,
            r,
            n,
            sizes,
            s,
            t,
            vector_cap,
            no_symmetry_breaking,
        } => cmd_search(
            cli,
            mode,
            *r,
            *n,
            sizes.clone(),
            *s,
            *t,
            *vector_cap,
            *no_symmetry_breaking,
        ),
        Cmd::VerifyTheorems {
            suite,
            max_vectors,
            max_r,
            max_n,
            reps,
        } => cmd_verify_theorems(cli, suite, *max_vectors, *max_r, *max_n, *reps),
    }
}

fn core_err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The one environment knob: PARTITE_NODE_BUDGET caps search nodes when no
/// --budget flag is given.
fn resolve_budget(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("PARTITE_NODE_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("PARTITE_NODE_BUDGET must be a node count, got `{v}`")),
        Err(std::env::VarError::NotPresent) => Ok(SearchOptions::default().node_budget),
        Err(e) => Err(format!("PARTITE_NODE_BUDGET: {e}")),
    }
}

fn resolve_spec(
    r: Option<usize>,
    n: Option<u32>,
    sizes: Option<Vec<u32>>,
) -> Result<PartSpec, String> {
    match (sizes, r, n) {
        (Some(v), None, None) => PartSpec::new(v).map_err(core_err),
        (None, Some(r), Some(n)) => PartSpec::symmetric(r, n).map_err(core_err),
        _ => Err("provide either --sizes n1,n2,... or both --r and --n".into()),
    }
}

fn read_family(path: &Path) -> Result<Family, String> {
    io::read_family_file(path).map_err(|e| format!("{}: {e}", path.display()))
}

// ---------------------------------------------------------------------------
// construct

/// The closed form the construction size is known to equal, where one exists
/// for the given sizes.
fn size_formula(
    name: &str,
    spec: &PartSpec,
    s: Option<usize>,
    t: Option<usize>,
) -> Option<FormulaValue> {
    let r = spec.part_count();
    let sym = spec.symmetric_size();
    let candidate = match name {
        "W_r" => match sym {
            Some(n) => Some(Formula::M0S1 { r, n }),
            None if r == 3 => {
                let v = spec.sizes();
                Some(Formula::M0Asym3 {
                    sizes: [v[0], v[1], v[2]],
                })
            }
            None => None,
        },
        "E" => sym.map(|n| Formula::M0Symmetric { r, s: s.unwrap_or(1), n }),
        "W_rt" => sym.map(|n| Formula::Iota0StarBranch { r, t: t.unwrap_or(1), n }),
        "K_rt" => sym.map(|n| Formula::Iota0SimplexBranch { r, t: t.unwrap_or(1), n }),
        _ => None,
    }?;
    formulas::evaluate(candidate).ok()
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    cli: &Cli,
    name: &str,
    r: Option<usize>,
    n: Option<u32>,
    sizes: Option<Vec<u32>>,
    s: Option<usize>,
    t: Option<usize>,
    out: Option<&Path>,
) -> CmdResult {
    let spec = resolve_spec(r, n, sizes)?;
    let family = match name {
        "W_r" => constructions::hilton_milner(&spec).map_err(core_err)?,
        "E" => {
            let s = s.ok_or("construction E needs --s")?;
            constructions::layered_hilton_milner(&spec, s).map_err(core_err)?
        }
        "W_rt" => {
            let t = t.ok_or("construction W_rt needs --t")?;
            constructions::generalized_hilton_milner(&spec, t).map_err(core_err)?
        }
        "K_rt" => {
            let t = t.ok_or("construction K_rt needs --t")?;
            constructions::simplex_family(&spec, t).map_err(core_err)?
        }
        other => {
            return Err(format!(
                "unknown construction `{other}`; expected W_r, E, W_rt, or K_rt"
            ))
        }
    };
    let formula = size_formula(name, &spec, s, t);
    let text = io::family_to_string(&family);
    if let Some(path) = out {
        io::write_family_file(&family, path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }

    let body = json!({
        "command": "construct",
        "name": name,
        "sizes": spec.sizes(),
        "s": s,
        "t": t,
        "edges": family.len(),
        "formula": formula.as_ref().map(|fv| json!({"name": fv.formula.name(), "value": fv.value})),
        "out": out.map(|p| p.display().to_string()),
        "family": text,
    });

    let mut info = vec![
        format!("construction {name} on sizes {}", sizes_text(spec.sizes())),
        format!("edges: {}", family.len()),
        match &formula {
            Some(fv) => format!("closed form {}: {}", fv.formula.name(), fv.value),
            None => "closed form: none for these sizes".into(),
        },
    ];
    let human = match out {
        Some(path) => {
            info.push(format!("wrote {}", path.display()));
            info
        }
        None if cli.json => info,
        None => {
            // keep stdout clean for piping: the family is the output
            for line in &info {
                eprintln!("{line}");
            }
            vec![text.trim_end().to_string()]
        }
    };
    Ok(Output::new(body, human))
}

// ---------------------------------------------------------------------------
// analyze

fn cmd_analyze(path: &Path, s: Option<usize>, t: Option<usize>) -> CmdResult {
    let f = read_family(path)?;
    let rep = analysis::analyze(&f);
    let nontrivial_matching = s
        .map(|s| analysis::is_nontrivial_matching_family(&f, s))
        .transpose()
        .map_err(core_err)?;
    let nontrivial_intersecting = t
        .map(|t| analysis::is_nontrivial_intersecting_family(&f, t))
        .transpose()
        .map_err(core_err)?;

    let body = json!({
        "command": "analyze",
        "path": path.display().to_string(),
        "sizes": f.spec().sizes(),
        "edges": f.len(),
        "report": serde_json::to_value(&rep).map_err(core_err)?,
        "nontrivial_matching": s.map(|s| json!({"s": s, "holds": nontrivial_matching.unwrap()})),
        "nontrivial_intersecting": t.map(|t| json!({"t": t, "holds": nontrivial_intersecting.unwrap()})),
    });

    let witness_edges = rep
        .matching_witness
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let witness_vertices = rep
        .transversal_witness
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let mut human = vec![
        format!(
            "family {}: sizes {}, {} edges",
            path.display(),
            sizes_text(f.spec().sizes()),
            f.len()
        ),
        format!("nu = {}  matching: {}", rep.matching_number, witness_edges),
        format!(
            "tau = {}  cover: {}",
            rep.transversal_number, witness_vertices
        ),
        format!(
            "min pairwise intersection = {}",
            rep.min_pairwise_intersection
        ),
        match &rep.fixed_coordinates {
            None => "common coordinates: undefined (empty family)".into(),
            Some(set) if set.is_empty() => "common coordinates: none".into(),
            Some(set) => format!(
                "common coordinates: {}",
                set.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        },
    ];
    if let (Some(s), Some(h)) = (s, nontrivial_matching) {
        human.push(format!("non-trivial at s = {s} (matching sense): {h}"));
    }
    if let (Some(t), Some(h)) = (t, nontrivial_intersecting) {
        human.push(format!("non-trivial at t = {t} (intersection sense): {h}"));
    }
    Ok(Output::new(body, human))
}

// ---------------------------------------------------------------------------
// shift

fn cmd_shift(
    cli: &Cli,
    path: &Path,
    t: Option<usize>,
    part: Option<usize>,
    symbol: Option<u32>,
    out: Option<&Path>,
) -> CmdResult {
    let f = read_family(path)?;
    let (image, detail, mut info): (Family, Value, Vec<String>) = match (part, symbol, t) {
        (Some(part), Some(symbol), _) => {
            let outcome = shifting::apply_shift(&f, part, symbol).map_err(core_err)?;
            let info = vec![format!(
                "shift (1 <- {symbol}) at part {part}: moved {}, blocked {}",
                outcome.moved_count, outcome.blocked_count
            )];
            (
                outcome.family,
                json!({
                    "single": {
                        "part": part,
                        "symbol": symbol,
                        "moved": outcome.moved_count,
                        "blocked": outcome.blocked_count,
                    }
                }),
                info,
            )
        }
        (None, None, Some(t)) => {
            let (g, rr) = shifting::shift_closure_preserving_nontriviality(&f, t)
                .map_err(core_err)?;
            let info = vec![
                format!("closure preserving non-triviality at t = {t}"),
                format!(
                    "coordinatewise shifted: {}",
                    rr.is_coordinatewise_shifted()
                ),
                format!(
                    "shifted parts: {}",
                    rr.shifted_parts
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                format!(
                    "resistant parts: {}",
                    if rr.resistant_parts.is_empty() {
                        "none".into()
                    } else {
                        rr.resistant_parts
                            .iter()
                            .map(|(p, x)| format!("{p} (symbol {x})"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                ),
            ];
            (
                g,
                json!({
                    "closure": {
                        "t": t,
                        "coordinatewise_shifted": rr.is_coordinatewise_shifted(),
                        "shifted_parts": rr.shifted_parts,
                        "resistant_parts": rr.resistant_parts,
                    }
                }),
                info,
            )
        }
        _ => {
            return Err(
                "use either --part with --symbol for one shift, or --t for the closure".into(),
            )
        }
    };

    let text = io::family_to_string(&image);
    if let Some(p) = out {
        io::write_family_file(&image, p).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    let body = json!({
        "command": "shift",
        "path": path.display().to_string(),
        "sizes": f.spec().sizes(),
        "edges_before": f.len(),
        "edges_after": image.len(),
        "detail": detail,
        "out": out.map(|p| p.display().to_string()),
        "family": text,
    });
    info.insert(
        0,
        format!("family {}: {} edges", path.display(), f.len()),
    );
    info.push(format!("image edges: {}", image.len()));
    let human = match out {
        Some(p) => {
            info.push(format!("wrote {}", p.display()));
            info
        }
        None if cli.json => info,
        None => {
            for line in &info {
                eprintln!("{line}");
            }
            vec![text.trim_end().to_string()]
        }
    };
    Ok(Output::new(body, human))
}

// ---------------------------------------------------------------------------
// base

fn cmd_base(path: &Path, s: usize) -> CmdResult {
    let f = read_family(path)?;
    let rep = sunflower::base_of_partite_family(&f, s).map_err(core_err)?;
    let jsonl = rep.base.provenance_jsonl();
    let body = json!({
        "command": "base",
        "path": path.display().to_string(),
        "s": s,
        "report": serde_json::to_value(&rep).map_err(core_err)?,
        "provenance_jsonl": jsonl,
    });
    let mut human = vec![
        format!(
            "family {}: nu = {}, tau = {}",
            path.display(),
            rep.family_matching_number,
            rep.family_transversal_number
        ),
        format!("base: {}", rep.base.family()),
        format!(
            "base nu = {}, tau = {}; sunflower with {} petals: {}; size {} within r!(rs)^r = {}: {}",
            rep.base_matching_number,
            rep.base_transversal_number,
            rep.forbidden_petal_count,
            rep.has_forbidden_sunflower,
            rep.base.family().len(),
            rep.size_bound,
            rep.size_within_bound
        ),
    ];
    for line in jsonl.lines() {
        human.push(format!("shrink: {line}"));
    }
    human.push(format!("all checks: {}", rep.all_ok()));
    let mut out = Output::new(body, human);
    if !rep.all_ok() {
        eprintln!("error: base facts failed on {}", path.display());
        out.exit = 2;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// search

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    mode: &str,
    r: Option<usize>,
    n: Option<u32>,
    sizes: Option<Vec<u32>>,
    s: Option<usize>,
    t: Option<usize>,
    vector_cap: u64,
    no_symmetry_breaking: bool,
) -> CmdResult {
    let spec = resolve_spec(r, n, sizes)?;
    let sizes_echo = spec.sizes().to_vec();
    let (problem, level) = match mode {
        "matching" => {
            let s = s.ok_or("--mode matching needs --s")?;
            (SearchProblem::matching(spec, s).map_err(core_err)?, s)
        }
        "intersecting" => {
            let t = t.ok_or("--mode intersecting needs --t")?;
            (SearchProblem::intersecting(spec, t).map_err(core_err)?, t)
        }
        other => return Err(format!("unknown mode `{other}`; expected matching or intersecting")),
    };
    let opts = SearchOptions {
        node_budget: resolve_budget(cli.budget)?,
        symmetry_breaking: !no_symmetry_breaking,
        threads: cli.threads.max(1),
        vector_cap,
        initial_lower_bound: 0,
    };
    let res = partite_core::search::solve(&problem, &opts).map_err(core_err)?;
    if !res.exhaustive {
        eprintln!(
            "warning: node budget {} exhausted after {} nodes; {} is only a lower bound",
            opts.node_budget, res.nodes, res.optimum
        );
    }
    let body = json!({
        "command": "search",
        "mode": mode,
        "sizes": sizes_echo,
        "level": level,
        "options": {
            "budget": opts.node_budget,
            "threads": opts.threads,
            "symmetry_breaking": opts.symmetry_breaking,
            "vector_cap": vector_cap,
        },
        "optimum": res.optimum,
        "exhaustive": res.exhaustive,
        "nodes": res.nodes,
        "witness": res.witness.as_ref().map(io::family_to_string),
    });
    let mut human = vec![
        format!(
            "search {mode} level {level} on sizes {}",
            sizes_text(&sizes_echo)
        ),
        format!(
            "optimum = {} ({}), {} nodes",
            res.optimum,
            if res.exhaustive { "exhaustive" } else { "lower bound" },
            res.nodes
        ),
    ];
    if let Some(w) = &res.witness {
        human.push("witness:".into());
        for line in io::family_to_string(w).lines() {
            human.push(format!("  {line}"));
        }
    }
    Ok(Output::new(body, human))
}

// ---------------------------------------------------------------------------
// verify-theorems

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::AllN => "all_n",
        Regime::LargeN => "large_n",
    }
}

/// The all-sizes statements on every grid point small enough for the vector
/// cap, in a fixed order.
fn all_n_points(max_vectors: u64) -> Vec<(TheoremId, Vec<u32>, usize)> {
    let mut pts = Vec::new();
    for (r, n_top) in [(3usize, 5u32), (4, 3), (5, 2), (6, 2)] {
        for n in 2..=n_top {
            pts.push((TheoremId::MatchingS1, vec![n; r], 1));
        }
    }
    let mut triples = Vec::new();
    for n1 in 2..=4u32 {
        for n2 in 2..=n1 {
            for n3 in 2..=n2 {
                triples.push(vec![n1, n2, n3]);
            }
        }
    }
    for tr in &triples {
        pts.push((TheoremId::MatchingAsym3, tr.clone(), 1));
    }
    for tr in &triples {
        pts.push((TheoremId::IntersectingRMinus2, tr.clone(), 1));
    }
    for q in [[2, 2, 2, 2], [3, 2, 2, 2], [3, 3, 2, 2], [3, 3, 3, 2], [3, 3, 3, 3]] {
        pts.push((TheoremId::IntersectingRMinus2, q.to_vec(), 2));
    }
    pts.retain(|(_, sizes, _)| {
        sizes.iter().map(|&x| x as u128).product::<u128>() <= max_vectors as u128
    });
    pts
}

fn cmd_verify_theorems(
    cli: &Cli,
    suite: &str,
    max_vectors: u64,
    max_r: Option<usize>,
    max_n: u32,
    reps: usize,
) -> CmdResult {
    let mut rows: Vec<Value> = Vec::new();
    let mut human: Vec<String> = Vec::new();
    let mut contradictions = 0usize;
    let mut inconclusive = 0usize;

    match suite {
        "all-n" => {
            let opts = SearchOptions {
                node_budget: resolve_budget(cli.budget)?,
                threads: cli.threads.max(1),
                ..SearchOptions::default()
            };
            for (id, sizes, level) in all_n_points(max_vectors) {
                let rep =
                    theorems::verify_theorem(id, &sizes, level, &opts).map_err(core_err)?;
                if rep.contradicts() {
                    contradictions += 1;
                }
                if rep.verdict == Verdict::Inconclusive {
                    inconclusive += 1;
                }
                human.push(format!(
                    "[all-n] {} sizes {} level {level}: formula {}, optimum {}, verdict {}",
                    id.name(),
                    sizes_text(&sizes),
                    rep.formula.value,
                    rep.search.optimum,
                    rep.verdict.name()
                ));
                rows.push(json!({
                    "theorem": id.name(),
                    "regime": regime_name(rep.regime),
                    "sizes": sizes,
                    "level": level,
                    "formula": rep.formula.value,
                    "optimum": rep.search.optimum,
                    "nodes": rep.search.nodes,
                    "verdict": rep.verdict.name(),
                    "note": rep.regime_note,
                }));
            }
        }
        "formulas" => {
            let top_r = max_r.unwrap_or(8);
            for r in 3..=top_r {
                for n in 2..=max_n {
                    let c = theorems::check_star_dominance(r, n).map_err(core_err)?;
                    push_arithmetic_row(&mut rows, &mut human, &mut contradictions, &c);
                }
            }
            for n in 2..=max_n {
                for c in theorems::phase_transition_checks(n).map_err(core_err)? {
                    push_arithmetic_row(&mut rows, &mut human, &mut contradictions, &c);
                }
            }
        }
        "uniform" => {
            let top_r = max_r.unwrap_or(6);
            for r in 3..=top_r {
                for t in 1..=r - 2 {
                    let rep = theorems::verify_uniform_lemma(r, t).map_err(core_err)?;
                    if !rep.ok {
                        contradictions += 1;
                    }
                    human.push(format!(
                        "[uniform] r {r} t {t}: optimum {} vs {}, star {}, simplex {}, verdict {}",
                        rep.result.optimum,
                        rep.result.formula_value,
                        rep.result.star_attains,
                        rep.result.simplex_attains,
                        if rep.ok { "equal" } else { "fail" }
                    ));
                    rows.push(json!({
                        "check": "uniform_lemma",
                        "r": r,
                        "t": t,
                        "optimum": rep.result.optimum,
                        "formula": rep.result.formula_value,
                        "star_attains": rep.result.star_attains,
                        "simplex_attains": rep.result.simplex_attains,
                        "all_star_or_simplex": rep.result.all_star_or_simplex,
                        "verdict": if rep.ok { "equal" } else { "fail" },
                    }));
                }
            }
        }
        "random" => {
            suite_random(cli.seed, reps, &mut rows, &mut human, &mut contradictions)?;
        }
        other => {
            return Err(format!(
                "unknown suite `{other}`; expected all-n, formulas, uniform, or random"
            ))
        }
    }

    if inconclusive > 0 {
        eprintln!("warning: {inconclusive} row(s) inconclusive under the node budget");
    }
    let verdict = if contradictions > 0 {
        "contradiction"
    } else if inconclusive > 0 {
        "inconclusive"
    } else {
        "pass"
    };
    human.push(format!(
        "rows: {}, contradictions: {contradictions}, inconclusive: {inconclusive}",
        rows.len()
    ));
    let body = json!({
        "command": "verify-theorems",
        "suite": suite,
        "seed": cli.seed,
        "rows": rows,
        "contradictions": contradictions,
        "inconclusive": inconclusive,
        "verdict": verdict,
    });
    let mut out = Output::new(body, human);
    if contradictions > 0 {
        eprintln!("error: {contradictions} row(s) contradict a statement inside its validity range");
        out.exit = 2;
    }
    Ok(out)
}

fn push_arithmetic_row(
    rows: &mut Vec<Value>,
    human: &mut Vec<String>,
    contradictions: &mut usize,
    c: &theorems::ArithmeticCheck,
) {
    if !c.holds {
        *contradictions += 1;
    }
    human.push(format!(
        "[formulas] {}: {} vs {} -> {}",
        c.name,
        c.lhs,
        c.rhs,
        if c.holds { "pass" } else { "fail" }
    ));
    rows.push(json!({
        "check": c.name,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "verdict": if c.holds { "pass" } else { "fail" },
    }));
}

/// Seeded randomized invariants: Koenig equality at r = 2, nu <= tau, and
/// shift closure preservation with the projection claim at fixpoints.
fn suite_random(
    seed: u64,
    reps: usize,
    rows: &mut Vec<Value>,
    human: &mut Vec<String>,
    contradictions: &mut usize,
) -> Result<(), String> {
    let mut push = |name: &str, failures: usize, extra: Option<(&str, usize)>| {
        if failures > 0 {
            *contradictions += 1;
        }
        let verdict = if failures == 0 { "pass" } else { "fail" };
        human.push(match extra {
            Some((key, v)) => {
                format!("[random] {name}: {reps} reps, {failures} failures, {key} {v} -> {verdict}")
            }
            None => format!("[random] {name}: {reps} reps, {failures} failures -> {verdict}"),
        });
        let mut row = json!({
            "check": name,
            "reps": reps,
            "failures": failures,
            "verdict": verdict,
        });
        if let Some((key, v)) = extra {
            row[key] = json!(v);
        }
        rows.push(row);
    };

    let mut koenig_failures = 0usize;
    for i in 0..reps {
        let mut rng = rng_from_seed(seed.wrapping_add(0x6B00_0000).wrapping_add(i as u64));
        let spec = random_spec(&mut rng, 2, 6).map_err(core_err)?;
        let f = random_family(&mut rng, &spec, 36).map_err(core_err)?;
        let rep = analysis::analyze(&f);
        if rep.matching_number != rep.transversal_number {
            koenig_failures += 1;
        }
    }
    push("koenig_equality", koenig_failures, None);

    let mut order_failures = 0usize;
    for i in 0..reps {
        let mut rng = rng_from_seed(seed.wrapping_add(0x7400_0000).wrapping_add(i as u64));
        let spec = random_spec(&mut rng, 3, 4).map_err(core_err)?;
        let f = random_family(&mut rng, &spec, 30).map_err(core_err)?;
        let rep = analysis::analyze(&f);
        if rep.matching_number > rep.transversal_number {
            order_failures += 1;
        }
    }
    push("nu_le_tau", order_failures, None);

    let mut shift_failures = 0usize;
    let mut closed = 0usize;
    for i in 0..reps {
        let mut rng = rng_from_seed(seed.wrapping_add(0x5300_0000).wrapping_add(i as u64));
        let (sizes, t): (Vec<u32>, usize) = if i % 2 == 0 {
            (vec![3, 3, 3], 1)
        } else {
            (vec![3, 3, 2, 2], 2)
        };
        let spec = PartSpec::new(sizes).map_err(core_err)?;
        let f = random_nontrivial_t_intersecting(&mut rng, &spec, t).map_err(core_err)?;
        let (g, rr) =
            shifting::shift_closure_preserving_nontriviality(&f, t).map_err(core_err)?;
        let preserved = g.len() == f.len()
            && analysis::is_t_intersecting(&g, t).map_err(core_err)?
            && analysis::is_nontrivial_intersecting_family(&g, t).map_err(core_err)?;
        let mut ok = preserved;
        if rr.is_coordinatewise_shifted() {
            closed += 1;
            let proj = analysis::projection_family(&g);
            let common = proj.common_elements().map(|c| c.len()).unwrap_or(0);
            ok = ok && proj.is_t_intersecting(t) && common < t;
        }
        if !ok {
            shift_failures += 1;
        }
    }
    push("shift_closure", shift_failures, Some(("closed", closed)));

    Ok(())
}
