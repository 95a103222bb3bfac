//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process fails if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use leibniz_cli::format;
use leibniz_core::corpus;
use leibniz_core::derivations;
use leibniz_core::oracle;
use leibniz_core::series;
use leibniz_core::structure;
use leibniz_core::subinvariance;
use leibniz_core::theorems::{self, SweepConfig};
use leibniz_core::{Error, Field, LeibnizAlgebra};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

const Q: Field = Field::Rationals;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn repo_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras").join(name)
}

fn e4_example() -> Check {
    let a = format::read_algebra(&repo_file("e4.json")).map_err(|e| e.to_string())?;
    ensure(a == corpus::example_e4(Q), "file does not match the builtin table")?;
    let z = a.span_of_units(&[2]);
    let r = subinvariance::is_subinvariant(&a, &z).map_err(|e| e.to_string())?;
    let chain = r.series.ok_or("span{z} not subinvariant")?;
    let expected = [
        a.full_space(),
        a.span_of_units(&[0, 1, 2]),
        a.span_of_units(&[0, 2]),
        a.span_of_units(&[2]),
    ];
    ensure(chain.terms() == expected, format!("chain {:?}", chain.terms()))?;
    let b = a.span_of_units(&[2, 3]);
    ensure(a.normalizer(&b).unwrap() == b, "span{z,t} is not self-normalizing")?;
    let a5 = a.reduce_mod(5).unwrap();
    let b5 = theorems::reduce_subspace(&b, a5.field()).unwrap();
    let u = subinvariance::underline_b(&a5, &b5).map_err(|e| e.to_string())?;
    ensure(u.span == a5.span_of_units(&[2]), format!("underline = {}", u.span))?;
    ensure(u.ideal_of_b && !u.ideal_of_a, "underline should be an ideal of B only")?;
    Ok("span{z} chain of length 4, span{z,t} self-normalizing, underline mod 5 = span{z}".into())
}

fn char_p_example() -> Check {
    let parts = corpus::char_p_parts(3).map_err(|e| e.to_string())?;
    let (p, m, ln) = (&parts.algebra, &parts.m, &parts.l_tensor_n);
    ensure(p.dim() == 10 && ln.dim() == 6, "dimensions")?;
    ensure(series::is_nilpotent(p, ln).unwrap(), "L⊗N not nilpotent")?;
    let r = subinvariance::is_subinvariant(p, ln).unwrap();
    let chain = r.series.ok_or("L⊗N not subinvariant")?;
    ensure(chain.terms() == [p.full_space(), m.clone(), ln.clone()], "chain is not P ▷ M ▷ L⊗N")?;
    ensure(&series::ideal_closure(p, ln, &p.full_space()).unwrap() == m, "ideal closure is not M")?;
    ensure(!series::is_solvable(p, m).unwrap(), "M is solvable")?;
    Ok("L⊗N nilpotent, subinvariant via P ▷ M ▷ L⊗N, ideal closure M not solvable".into())
}

fn oracle_equivalence() -> Check {
    let mut algebras = corpus::small_field_corpus(2, 4, 40, 11).map_err(|e| e.to_string())?;
    algebras.extend(corpus::small_field_corpus(3, 3, 40, 12).map_err(|e| e.to_string())?);
    let reports: Vec<_> = algebras
        .par_iter()
        .map(oracle::check_equivalence)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let subalgebras: usize = reports.iter().map(|r| r.subalgebras).sum();
    let pairs: usize = reports.iter().map(|r| r.closure_pairs).sum();
    let mismatches: usize = reports.iter().map(|r| r.mismatches.len() + r.closure_mismatches.len()).sum();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.algebra.as_str()).collect();
    ensure(failed.is_empty(), format!("{mismatches} mismatches in {failed:?}"))?;
    Ok(format!(
        "{} algebras, {subalgebras} subalgebras, {pairs} closure pairs, 0 mismatches",
        reports.len()
    ))
}

fn theorem_suite() -> Check {
    let entries = corpus::standard_corpus(200, 2024).map_err(|e| e.to_string())?;
    let cfg = SweepConfig::default();
    let reports: Vec<_> = entries
        .par_iter()
        .map(|e| theorems::sweep(&e.algebra, &cfg))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let summary = theorems::summarize(&reports);
    ensure(summary.algebras >= 200, "fewer than 200 algebras")?;
    let mut bad = Vec::new();
    for t in &summary.tallies {
        if t.violated > 0 {
            bad.push(format!("{} ({}): {:?}", t.name, t.violated, t.first_violation));
        }
    }
    ensure(bad.is_empty(), bad.join("; "))?;
    let checked: usize = summary.tallies.iter().map(|t| t.checked).sum();
    let vacuous: usize = summary.tallies.iter().map(|t| t.vacuous).sum();
    let center = summary.tally("center_nonzero").expect("registered");
    let sub_omega = summary.tally("sub_omega_centralizer").expect("registered");
    Ok(format!(
        "{} algebras, {checked} instances checked, {vacuous} vacuous (center {} / {}, centralizer {} / {}), 0 violations",
        summary.algebras, center.checked, center.vacuous, sub_omega.checked, sub_omega.vacuous
    ))
}

fn structure_answers() -> Check {
    ensure(structure::radical(&corpus::sl2(Q)).unwrap().is_zero(), "rad(sl2) ≠ 0")?;
    let e4 = corpus::example_e4(Q);
    ensure(structure::radical(&e4).unwrap().is_full(), "rad(E4) ≠ E4")?;
    ensure(structure::nilradical(&e4).unwrap() == e4.span_of_units(&[0, 1, 2]), "nilrad(E4)")?;
    let mut algebras: Vec<LeibnizAlgebra> = corpus::standard_corpus(200, 2024)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|e| e.algebra)
        .filter(|a| a.dim() <= 4 && a.has_integer_constants())
        .collect();
    algebras.dedup();
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for a in &algebras {
        let (rad, nil) = (structure::radical(a).unwrap(), structure::nilradical(a).unwrap());
        let (orad, onil) = oracle::oracle_rad_nilrad(&a.reduce_mod(5).unwrap()).map_err(|e| e.to_string())?;
        compared += 1;
        if (rad.dim(), nil.dim()) != (orad.dim(), onil.dim()) {
            disagreements.push(format!(
                "{}: rad {} vs {}, nilrad {} vs {}",
                a.name(),
                rad.dim(),
                orad.dim(),
                nil.dim(),
                onil.dim()
            ));
        }
    }
    ensure(disagreements.is_empty(), disagreements.join("; "))?;
    Ok(format!("known answers hold; {compared} mod-5 nilradical comparisons agree"))
}

fn tower_runs() -> Check {
    for (a, dim) in [(corpus::sl2(Q), 3), (corpus::aff1(Q), 2)] {
        let t = derivations::tower(&a, 4).map_err(|e| e.to_string())?;
        ensure(t.terminated && t.limit_dim == dim, format!("{}: limit {}", a.name(), t.limit_dim))?;
        let limit = t.limit.as_ref().expect("terminated");
        ensure(derivations::derivations(limit).inner.is_full(), "inner is not everything at the limit")?;
    }
    let mut runs = 0;
    for e in corpus::standard_corpus(200, 2024).map_err(|e| e.to_string())? {
        if !e.algebra.left_center().is_zero() || e.algebra.dim() > 6 {
            continue;
        }
        match derivations::tower(&e.algebra, 4) {
            Ok(t) => {
                runs += 1;
                let b = t.bound_check.ok_or(format!("{}: bound not evaluated", e.name))?;
                ensure(b.holds, format!("{}: bound fails {b:?}", e.name))?;
            }
            Err(Error::StageBudgetExceeded { .. }) => {}
            Err(err) => return Err(format!("{}: {err}", e.name)),
        }
    }
    ensure(
        derivations::tower(&corpus::example_e4(Q), 4).unwrap_err() == Error::NonzeroLeftCenter { dim: 2 },
        "E4 accepted",
    )?;
    Ok(format!("sl2 → 3, aff1 → 2 complete; bound holds on {runs} terminating runs; E4 rejected"))
}

fn run_binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("{args:?} exited with {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn hygiene() -> Check {
    let e4 = repo_file("e4.json");
    let p3 = repo_file("p3.json");
    let dir = repo_file("");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["analyze", "--json", "--seed", "7", "--input", e4.to_str().unwrap(), "--subspace", "0,0,1,0"],
        vec!["theorems", "--json", "--seed", "7", "--input", p3.to_str().unwrap()],
        vec!["theorems", "--json", "--seed", "3", "--input", dir.to_str().unwrap()],
    ];
    for args in &invocations {
        let first = Sha256::digest(run_binary(args)?);
        let second = Sha256::digest(run_binary(args)?);
        ensure(first == second, format!("{args:?}: digests differ"))?;
    }
    // Coefficients travel as strings and re-parse to the same canonical basis.
    let out = run_binary(&["subinvariant", "--json", "--input", e4.to_str().unwrap(), "--subspace", "0,0,1,0"])?;
    let v: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let a = corpus::example_e4(Q);
    for term in v["chain"].as_array().ok_or("chain missing")? {
        let rows: Vec<Vec<String>> = serde_json::from_value(term.clone()).map_err(|e| e.to_string())?;
        let s = format::subspace_from_rows(&rows, Q, 4).map_err(|e| e.to_string())?;
        ensure(serde_json::to_value(&s).unwrap() == *term, "subspace did not round-trip")?;
    }
    let with_thirds = format::parse_subspace("1/3,0,0,0;0,-2/3,1,0", &a).unwrap();
    let rows: Vec<Vec<String>> = serde_json::from_value(serde_json::to_value(&with_thirds).unwrap()).unwrap();
    ensure(format::subspace_from_rows(&rows, Q, 4).unwrap() == with_thirds, "fractions did not round-trip")?;
    Ok(format!("{} invocations hashed identically across two runs; subspaces round-trip", invocations.len()))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Check)> = vec![
        ("final example over Q (E4)", Duration::from_secs(1), e4_example),
        ("characteristic 3 example", Duration::from_secs(5), char_p_example),
        ("oracle equivalence over F_2 and F_3", Duration::from_secs(60), oracle_equivalence),
        ("theorem suite in characteristic 0", Duration::from_secs(300), theorem_suite),
        ("structure known answers", Duration::from_secs(300), structure_answers),
        ("derivation tower", Duration::from_secs(300), tower_runs),
        ("numerical hygiene", Duration::from_secs(300), hygiene),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        match timed(limit, f) {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
