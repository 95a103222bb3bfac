//! Command-line front end: reads algebra files, runs one analysis per
//! subcommand and renders the result as text or JSON.
//!
//! Exit codes: 0 success, 1 a check failed or a computation could not be
//! completed, 2 bad input.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use leibniz_core::derivations::{self, TowerReport};
use leibniz_core::structure::{self, CheckStatus};
use leibniz_core::theorems::{self, ClaimTally, SweepConfig, SweepReport};
use leibniz_core::{oracle, series, subinvariance, Error, LeibnizAlgebra, Subspace};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "leibniz", version, about = "Exact structure computations for Leibniz algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Algebra file, or a directory of `*.json` algebra files.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Subspace as `c1,c2,...;c1,c2,...` (vectors separated by `;`).
    #[arg(long, global = true)]
    pub subspace: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cartan search budget.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_attempts: usize,
    /// Derivation tower budget.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_stages: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and check the left Leibniz identity.
    Validate,
    /// Everything: series, centers, radicals, Cartan, tower and the theorem sweep.
    Analyze,
    /// Lower central and derived series of the algebra or of `--subspace`.
    Series,
    /// Decide subinvariance of `--subspace`, with a witness chain.
    Subinvariant,
    /// Largest solvable ideal.
    Radical,
    /// Largest nilpotent ideal.
    Nilradical,
    /// Seeded search for a Cartan subalgebra.
    Cartan,
    /// Derivation tower (requires trivial left center).
    Tower,
    /// Compare fast paths with exhaustive enumeration (small prime fields).
    OracleCheck,
    /// Run the theorem sweep and report a pass/fail matrix.
    Theorems,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    json: Value,
    text: String,
    failed: bool,
    sweep: Option<SweepReport>,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { stdout: rendered, stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    let Some(input) = cli.input.clone() else {
        return error_output(&cli, &Error::InvalidParams("--input is required".into()));
    };
    if input.is_dir() {
        run_directory(&cli, &input)
    } else {
        match process(&cli, &input) {
            Ok(r) => Output {
                stdout: if cli.json { pretty(&r.json) } else { r.text },
                stderr: String::new(),
                code: i32::from(r.failed),
            },
            Err(e) => error_output(&cli, &e),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// 2 for malformed input or unsupported requests, 1 for failed checks and
/// computations that could not finish.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_)
        | Error::VerificationFailed(_)
        | Error::MaximalityInconclusive(_)
        | Error::CartanSearchExhausted { .. }
        | Error::CenterAppearedMidTower { .. }
        | Error::StageBudgetExceeded { .. }
        | Error::SumNotSolvable
        | Error::SumNotNilpotent => 1,
        _ => 2,
    }
}

fn error_json(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}

fn error_output(cli: &Cli, e: &Error) -> Output {
    let code = exit_code(e);
    if cli.json {
        Output { stdout: pretty(&error_json(e)), stderr: String::new(), code }
    } else {
        Output { stdout: String::new(), stderr: format!("error[{}]: {e}\n", e.code()), code }
    }
}

fn run_directory(cli: &Cli, dir: &Path) -> Output {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return error_output(cli, &Error::Parse(format!("{}: {e}", dir.display()))),
    };
    files.sort();
    let results: Vec<(String, std::result::Result<Report, Error>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (name, process(cli, p))
        })
        .collect();
    let mut code = 0;
    let mut entries = Vec::new();
    let mut text = String::new();
    for (name, r) in &results {
        text.push_str(&format!("== {name} ==\n"));
        match r {
            Ok(rep) => {
                code = code.max(i32::from(rep.failed));
                entries.push(json!({"file": name, "report": rep.json}));
                text.push_str(&rep.text);
            }
            Err(e) => {
                code = code.max(exit_code(e));
                let mut v = error_json(e);
                v["file"] = json!(name);
                entries.push(v);
                text.push_str(&format!("error[{}]: {e}\n", e.code()));
            }
        }
    }
    if cli.command == Command::Theorems {
        let summary = theorems::summarize(results.iter().filter_map(|(_, r)| r.as_ref().ok()?.sweep.as_ref()));
        text.push_str(&format!("== summary over {} algebras ==\n", summary.algebras));
        text.push_str(&tally_table(&summary.tallies));
    }
    Output {
        stdout: if cli.json { pretty(&Value::Array(entries)) } else { text },
        stderr: String::new(),
        code,
    }
}

fn process(cli: &Cli, path: &Path) -> leibniz_core::Result<Report> {
    let a = format::read_algebra(path)?;
    let b = cli.subspace.as_deref().map(|s| format::parse_subspace(s, &a)).transpose()?;
    match cli.command {
        Command::Validate => Ok(validate(&a)),
        Command::Analyze => analyze(cli, &a, b.as_ref()),
        Command::Series => series_report(&a, b.as_ref()),
        Command::Subinvariant => {
            let b = b.ok_or_else(|| Error::InvalidParams("subinvariant needs --subspace".into()))?;
            subinvariant(&a, &b)
        }
        Command::Radical => radicals(&a, false),
        Command::Nilradical => radicals(&a, true),
        Command::Cartan => cartan(cli, &a),
        Command::Tower => tower(cli, &a),
        Command::OracleCheck => oracle_check(&a),
        Command::Theorems => theorem_sweep(cli, &a),
    }
}

fn header(a: &LeibnizAlgebra) -> Value {
    json!({"algebra": a.name(), "field": a.field().to_string(), "dim": a.dim()})
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn validate(a: &LeibnizAlgebra) -> Report {
    let lie = a.is_lie();
    Report {
        json: merge(header(a), json!({"valid": true, "lie": lie})),
        text: format!(
            "{}: valid left Leibniz algebra over {}, dim {}{}\n",
            a.name(),
            a.field(),
            a.dim(),
            if lie { ", Lie" } else { "" }
        ),
        failed: false,
        sweep: None,
    }
}

fn series_json(a: &LeibnizAlgebra, b: &Subspace) -> leibniz_core::Result<(Value, String)> {
    let lc = series::lower_central(a, b)?;
    let de = series::derived(a, b)?;
    let omega = lc.limit().clone();
    let v = json!({
        "subspace": b,
        "lower_central": lc.terms[..=lc.stabilized_at],
        "derived": de.terms[..=de.stabilized_at],
        "omega": omega,
        "nilpotent": lc.reaches_zero(),
        "solvable": de.reaches_zero(),
    });
    let text = format!(
        "lower central dims {:?}{}\nderived dims {:?}{}\nomega = {omega}\n",
        &lc.dims()[..=lc.stabilized_at],
        if lc.reaches_zero() { " (nilpotent)" } else { "" },
        &de.dims()[..=de.stabilized_at],
        if de.reaches_zero() { " (solvable)" } else { "" },
    );
    Ok((v, text))
}

fn series_report(a: &LeibnizAlgebra, b: Option<&Subspace>) -> leibniz_core::Result<Report> {
    let full = a.full_space();
    let b = b.unwrap_or(&full);
    let (v, text) = series_json(a, b)?;
    Ok(Report { json: merge(header(a), v), text, failed: false, sweep: None })
}

fn subinvariant(a: &LeibnizAlgebra, b: &Subspace) -> leibniz_core::Result<Report> {
    let r = subinvariance::is_subinvariant(a, b)?;
    let normalizer = a.normalizer(b)?;
    let chain: Vec<&Subspace> = r.series.as_ref().map(|s| s.terms().iter().collect()).unwrap_or_default();
    let underline = underline_json(a, b);
    let json = merge(
        header(a),
        json!({
            "subspace": b,
            "subinvariant": r.subinvariant,
            "chain": chain,
            "chain_length": chain.len(),
            "closure_chain": r.closure_chain,
            "counterwitness": r.counterwitness,
            "normalizer": normalizer,
            "self_normalizing": &normalizer == b,
            "underline": underline,
        }),
    );
    let mut text = String::new();
    if r.subinvariant {
        text.push_str(&format!("PASS: {b} is subinvariant; chain of length {}\n", chain.len()));
        for t in &chain {
            text.push_str(&format!("  {t}\n"));
        }
    } else {
        text.push_str(&format!(
            "NOT SUBINVARIANT: {b}; the ideal closure chain stops at {}\n",
            r.counterwitness.as_ref().expect("set when not subinvariant")
        ));
    }
    text.push_str(&format!("normalizer = {normalizer}{}\n", if &normalizer == b { " (self-normalizing)" } else { "" }));
    if let Some(u) = json.get("underline").filter(|u| !u.is_null()) {
        text.push_str(&format!(
            "subalgebra generated by subinvariant subalgebras inside B (over {}): dim {}, ideal of B: {}, ideal of A: {}\n",
            u["field"].as_str().unwrap_or("?"),
            u["span"].as_array().map_or(0, Vec::len),
            u["ideal_of_b"],
            u["ideal_of_a"]
        ));
    }
    Ok(Report { json, text, failed: false, sweep: None })
}

/// Enumeration-based computation, on the reduction mod 5 for rational input.
fn underline_json(a: &LeibnizAlgebra, b: &Subspace) -> Value {
    let target = if a.field().is_char_zero() {
        let Ok(r) = a.reduce_mod(5) else { return Value::Null };
        let Ok(rb) = theorems::reduce_subspace(b, r.field()) else { return Value::Null };
        (r, rb)
    } else {
        (a.clone(), b.clone())
    };
    match subinvariance::underline_b(&target.0, &target.1) {
        Ok(u) => json!({
            "field": target.0.field().to_string(),
            "span": u.span,
            "contributors": u.contributors,
            "ideal_of_b": u.ideal_of_b,
            "ideal_of_a": u.ideal_of_a,
        }),
        Err(_) => Value::Null,
    }
}

fn radicals(a: &LeibnizAlgebra, nil: bool) -> leibniz_core::Result<Report> {
    let (r, n, method) = if a.field().is_char_zero() {
        let r = structure::radical(a)?;
        let n = if nil { Some(structure::nilradical(a)?) } else { None };
        (r, n, "killing_form")
    } else {
        let (r, n) = oracle::oracle_rad_nilrad(a)?;
        (r, Some(n), "enumeration")
    };
    let mut v = json!({"radical": r, "method": method});
    let mut text = format!("radical = {r} (dim {})\n", r.dim());
    if nil {
        let n = n.expect("computed when requested");
        text.push_str(&format!("nilradical = {n} (dim {})\n", n.dim()));
        v["nilradical"] = json!(n);
    }
    Ok(Report { json: merge(header(a), v), text, failed: false, sweep: None })
}

fn cartan(cli: &Cli, a: &LeibnizAlgebra) -> leibniz_core::Result<Report> {
    let c = structure::cartan(a, cli.max_attempts, cli.seed)?;
    let text = format!(
        "Cartan subalgebra {} (dim {}), Fitting null component of L_x for x = {}, trial {}\n",
        c.subalgebra,
        c.subalgebra.dim(),
        c.element,
        c.trials
    );
    Ok(Report { json: merge(header(a), json!({"cartan": c, "seed": cli.seed})), text, failed: false, sweep: None })
}

fn tower_text(t: &TowerReport) -> String {
    let mut text = String::new();
    for (i, s) in t.stages.iter().enumerate() {
        text.push_str(&format!(
            "stage {i}: dim {}, der {}, inner {}{}\n",
            s.dim,
            s.der_dim,
            s.inner_dim,
            if s.complete { " (complete)" } else { "" }
        ));
    }
    text.push_str(&format!("limit dim {}\n", t.limit_dim));
    if let Some(b) = &t.bound_check {
        text.push_str(&format!(
            "bound: {} <= dim Der(A^ω) + dim Z(A^ω) = {} + {}: {}\n",
            t.limit_dim,
            b.der_omega_dim,
            b.center_omega_dim,
            if b.holds { "PASS" } else { "FAIL" }
        ));
    }
    text
}

fn tower(cli: &Cli, a: &LeibnizAlgebra) -> leibniz_core::Result<Report> {
    let t = derivations::tower(a, cli.max_stages)?;
    let inner_full = t.limit.as_ref().map(|g| derivations::derivations(g).inner.is_full());
    let failed = t.bound_check.as_ref().is_some_and(|b| !b.holds) || inner_full == Some(false);
    Ok(Report {
        json: merge(header(a), json!({"tower": t, "inner_full_at_limit": inner_full})),
        text: tower_text(&t),
        failed,
        sweep: None,
    })
}

fn oracle_check(a: &LeibnizAlgebra) -> leibniz_core::Result<Report> {
    let r = oracle::check_equivalence(a)?;
    let passed = r.passed();
    let text = format!(
        "{}: {} subspaces, {} subalgebras, {} subinvariant; {} subinvariance mismatches, {} closure mismatches over {} pairs\n",
        if passed { "PASS" } else { "FAIL" },
        r.subspaces,
        r.subalgebras,
        r.subinvariant,
        r.mismatches.len(),
        r.closure_mismatches.len(),
        r.closure_pairs
    );
    Ok(Report { json: merge(header(a), json!({"oracle": r, "passed": passed})), text, failed: !passed, sweep: None })
}

fn status_word(t: &ClaimTally) -> &'static str {
    if t.violated > 0 {
        "FAIL"
    } else if t.findings > 0 {
        "INFO"
    } else if t.checked > 0 {
        "PASS"
    } else if t.vacuous > 0 {
        "VACUOUS"
    } else {
        "SKIPPED"
    }
}

fn tally_table(tallies: &[ClaimTally]) -> String {
    let mut text = String::new();
    for t in tallies {
        text.push_str(&format!(
            "{:<8} {:<38} checked {:>5}  vacuous {:>4}  skipped {:>3}",
            status_word(t),
            t.name,
            t.checked,
            t.vacuous,
            t.skipped
        ));
        if let Some(v) = &t.first_violation {
            text.push_str(&format!("\n         first violation: {v}"));
        } else if let Some(f) = &t.first_finding {
            text.push_str(&format!("\n         finding: {f}"));
        }
        text.push('\n');
    }
    text
}

fn sweep_config(cli: &Cli) -> SweepConfig {
    SweepConfig {
        seed: cli.seed,
        cartan_budget: cli.max_attempts,
        ..SweepConfig::default()
    }
}

fn theorem_sweep(cli: &Cli, a: &LeibnizAlgebra) -> leibniz_core::Result<Report> {
    let r = theorems::sweep(a, &sweep_config(cli))?;
    let text = format!(
        "{} over {} (dim {}): {} candidate subalgebras, {} subinvariant\n{}",
        r.algebra,
        r.field,
        r.dim,
        r.candidates,
        r.subinvariant_candidates,
        tally_table(&r.tallies)
    );
    Ok(Report {
        json: serde_json::to_value(&r).expect("report serializes"),
        failed: r.violations() > 0,
        text,
        sweep: Some(r),
    })
}

fn analyze(cli: &Cli, a: &LeibnizAlgebra, b: Option<&Subspace>) -> leibniz_core::Result<Report> {
    let mut text = validate(a).text;
    let (series_v, series_t) = series_json(a, &a.full_space())?;
    text.push_str(&series_t);

    let leib = a.leib_ideal().ok();
    let centers = json!({
        "left_center": a.left_center(),
        "right_center": a.right_center(),
        "center": a.center(),
        "leib": leib,
    });
    text.push_str(&format!(
        "left center = {}\nright center = {}\ncenter = {}\n",
        a.left_center(),
        a.right_center(),
        a.center()
    ));
    if let Some(l) = &leib {
        text.push_str(&format!("Leib = {l}\n"));
    }
    let structure = structure::check_structure_theorems(a, cli.max_attempts, cli.seed);
    let mut failed = false;
    let structure_v = match &structure {
        Ok(s) => {
            if let Some(r) = &s.radical {
                text.push_str(&format!("radical = {r}\n"));
            }
            if let Some(n) = &s.nilradical {
                text.push_str(&format!("nilradical = {n}\n"));
            }
            if let Some(h) = &s.cartan {
                text.push_str(&format!("Cartan = {h}\n"));
            }
            for c in &s.checks {
                text.push_str(&format!("{:<8} {}: {}\n", check_word(c.status), c.name, c.detail));
            }
            failed |= s.failures().next().is_some();
            serde_json::to_value(s).expect("report serializes")
        }
        Err(e) => {
            failed |= exit_code(e) == 1;
            text.push_str(&format!("structure: error[{}]: {e}\n", e.code()));
            error_json(e)
        }
    };

    let tower_v = match derivations::tower(a, cli.max_stages) {
        Ok(t) => {
            failed |= t.bound_check.as_ref().is_some_and(|b| !b.holds);
            text.push_str(&tower_text(&t));
            json!(t)
        }
        Err(e) => {
            text.push_str(&format!("tower: {} ({})\n", e.code(), e));
            error_json(&e)
        }
    };

    let sub_v = match b {
        Some(b) => {
            let r = subinvariant(a, b)?;
            text.push_str(&r.text);
            r.json
        }
        None => Value::Null,
    };

    let sweep = theorems::sweep(a, &sweep_config(cli))?;
    failed |= sweep.violations() > 0;
    text.push_str(&tally_table(&sweep.tallies));

    Ok(Report {
        json: merge(
            header(a),
            json!({
                "valid": true,
                "lie": a.is_lie(),
                "series": series_v,
                "centers": centers,
                "structure": structure_v,
                "tower": tower_v,
                "subinvariance": sub_v,
                "theorems": sweep,
            }),
        ),
        text,
        failed,
        sweep: Some(sweep),
    })
}

fn check_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Vacuous => "VACUOUS",
        CheckStatus::Skipped => "SKIPPED",
    }
}
