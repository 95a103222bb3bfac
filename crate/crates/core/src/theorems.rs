//! Executable sweep of the structural claims about subinvariant subalgebras,
//! radicals and Cartan subalgebras, run over a sample of subalgebras of one
//! algebra and tallied per claim.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{LeibnizAlgebra, Side};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::scalar::Field;
use crate::series;
use crate::structure::{self, CheckStatus};
use crate::subinvariance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// A falsified instance is a defect.
    Theorem,
    /// A mismatch is informational.
    Diagnostic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimScope {
    AnyField,
    /// Over `F_p` a characteristic-free weakening is checked and failures are
    /// reported as findings.
    CharZero,
}

const CLAIMS: &[(&str, ClaimKind, ClaimScope)] = {
    use ClaimKind::*;
    use ClaimScope::*;
    &[
        ("f_power_containment", Theorem, AnyField),
        ("omega_ideal", Theorem, AnyField),
        ("perfect_subinvariant_ideal", Theorem, AnyField),
        ("cartan_decomposition", Theorem, AnyField),
        ("subinvariant_cartan_decomposition", Theorem, AnyField),
        ("ideal_meets_center", Theorem, AnyField),
        ("center_nonzero", Theorem, AnyField),
        ("sub_omega_centralizer", Theorem, AnyField),
        ("basic_transitivity", Theorem, AnyField),
        ("basic_intersection", Theorem, AnyField),
        ("basic_restriction", Theorem, AnyField),
        ("basic_image", Theorem, AnyField),
        ("leib_in_left_center", Theorem, AnyField),
        ("radical_products", Theorem, CharZero),
        ("solvable_square_nilpotent", Theorem, CharZero),
        ("square_meets_radical", Theorem, CharZero),
        ("nilradical_of_radical", Theorem, CharZero),
        ("solvable_subinvariant_in_radical", Theorem, CharZero),
        ("ideal_radicals", Theorem, CharZero),
        ("nilpotent_subinvariant_in_nilradical", Theorem, CharZero),
        ("subinvariant_radicals", Theorem, CharZero),
        ("nilpotent_join", Theorem, CharZero),
        ("subinvariant_join", Theorem, CharZero),
        ("bar_closure_subinvariant", Theorem, CharZero),
        ("underline_ideal", Theorem, CharZero),
        ("bar_closure_orbit_span", Diagnostic, AnyField),
    ]
};

/// Names of all claims, in report order.
pub fn claim_names() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|c| c.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub name: String,
    pub kind: ClaimKind,
    pub scope: ClaimScope,
    pub checked: usize,
    pub passed: usize,
    pub violated: usize,
    /// Hypothesis not met.
    pub vacuous: usize,
    /// Not decidable here (search budget, enumeration scope, field).
    pub skipped: usize,
    /// Expected failures: char-p instances of char-0 claims and diagnostic mismatches.
    pub findings: usize,
    pub first_violation: Option<String>,
    pub first_finding: Option<String>,
}

impl ClaimTally {
    fn new(name: &str, kind: ClaimKind, scope: ClaimScope) -> ClaimTally {
        ClaimTally {
            name: name.to_string(),
            kind,
            scope,
            checked: 0,
            passed: 0,
            violated: 0,
            vacuous: 0,
            skipped: 0,
            findings: 0,
            first_violation: None,
            first_finding: None,
        }
    }

    fn absorb(&mut self, other: &ClaimTally) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.violated += other.violated;
        self.vacuous += other.vacuous;
        self.skipped += other.skipped;
        self.findings += other.findings;
        if self.first_violation.is_none() {
            self.first_violation.clone_from(&other.first_violation);
        }
        if self.first_finding.is_none() {
            self.first_finding.clone_from(&other.first_finding);
        }
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Pass,
    Fail(String),
    Vacuous,
    Skipped,
    Finding(String),
}

#[derive(Clone, Debug)]
struct Tallies(Vec<ClaimTally>);

impl Tallies {
    fn new() -> Tallies {
        Tallies(CLAIMS.iter().map(|&(n, k, s)| ClaimTally::new(n, k, s)).collect())
    }

    fn get(&mut self, name: &str) -> &mut ClaimTally {
        self.0.iter_mut().find(|t| t.name == name).expect("registered claim")
    }

    fn record(&mut self, name: &str, outcome: Outcome) {
        let t = self.get(name);
        match outcome {
            Outcome::Pass => {
                t.checked += 1;
                t.passed += 1;
            }
            Outcome::Fail(detail) => {
                t.checked += 1;
                if t.kind == ClaimKind::Diagnostic {
                    t.findings += 1;
                    t.first_finding.get_or_insert(detail);
                } else {
                    t.violated += 1;
                    t.first_violation.get_or_insert(detail);
                }
            }
            Outcome::Finding(detail) => {
                t.checked += 1;
                t.findings += 1;
                t.first_finding.get_or_insert(detail);
            }
            Outcome::Vacuous => t.vacuous += 1,
            Outcome::Skipped => t.skipped += 1,
        }
    }

    fn record_result(&mut self, name: &str, r: Result<Outcome>) {
        let outcome = match r {
            Ok(o) => o,
            Err(e) => outcome_of_error(&e),
        };
        self.record(name, outcome);
    }
}

fn outcome_of_error(e: &Error) -> Outcome {
    match e {
        Error::CharTwoDimTooLarge { .. }
        | Error::DimTooLargeForEnumeration { .. }
        | Error::ScopeExceeded(_)
        | Error::CartanSearchExhausted { .. }
        | Error::DenominatorDivisibleByP { .. } => Outcome::Skipped,
        _ => Outcome::Fail(format!("{}: {e}", e.code())),
    }
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub cartan_budget: usize,
    /// Random elements whose generated subalgebras join the candidates.
    pub random_vectors: usize,
    pub max_candidates: usize,
    /// Cap on the pairs examined by each two-argument claim.
    pub max_pairs: usize,
    /// Prime used to reduce rational algebras for the enumeration-based claim.
    pub underline_prime: u64,
    pub underline_max_dim: usize,
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig {
            seed: 0,
            cartan_budget: 64,
            random_vectors: 4,
            max_candidates: 40,
            max_pairs: 60,
            underline_prime: 5,
            underline_max_dim: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub algebra: String,
    pub field: String,
    pub dim: usize,
    pub candidates: usize,
    pub subinvariant_candidates: usize,
    pub tallies: Vec<ClaimTally>,
}

impl SweepReport {
    pub fn violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violated).sum()
    }

    pub fn findings(&self) -> usize {
        self.tallies.iter().map(|t| t.findings).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub algebras: usize,
    pub tallies: Vec<ClaimTally>,
}

impl SweepSummary {
    pub fn violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violated).sum()
    }

    pub fn tally(&self, name: &str) -> Option<&ClaimTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

/// Sum tallies claim by claim over several sweeps.
pub fn summarize<'a>(reports: impl IntoIterator<Item = &'a SweepReport>) -> SweepSummary {
    let mut acc = Tallies::new();
    let mut algebras = 0;
    for r in reports {
        algebras += 1;
        for t in &r.tallies {
            acc.get(&t.name).absorb(t);
        }
    }
    SweepSummary { algebras, tallies: acc.0 }
}

struct Facts {
    subinvariant: bool,
    omega: Subspace,
    square: Subspace,
    nilpotent: bool,
    solvable: bool,
}

struct Sweep<'a> {
    a: &'a LeibnizAlgebra,
    cfg: &'a SweepConfig,
    full: Subspace,
    tallies: Tallies,
    candidates: Vec<Subspace>,
    facts: BTreeMap<Subspace, Facts>,
    rng: ChaCha8Rng,
}

/// Run every claim on `a` and a deterministic sample of its subalgebras.
pub fn sweep(a: &LeibnizAlgebra, cfg: &SweepConfig) -> Result<SweepReport> {
    let mut s = Sweep {
        a,
        cfg,
        full: a.full_space(),
        tallies: Tallies::new(),
        candidates: Vec::new(),
        facts: BTreeMap::new(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    };
    let cartan = s.structure_claims()?;
    s.collect_candidates(cartan.as_ref())?;
    for b in s.candidates.clone() {
        let f = s.facts_of(&b)?;
        s.facts.insert(b, f);
    }
    s.general_claims()?;
    s.pair_claims()?;
    s.radical_claims()?;
    s.closure_claims()?;
    s.underline_claims()?;
    let subinvariant_candidates = s.facts.values().filter(|f| f.subinvariant).count();
    Ok(SweepReport {
        algebra: a.name().to_string(),
        field: a.field().to_string(),
        dim: a.dim(),
        candidates: s.candidates.len(),
        subinvariant_candidates,
        tallies: s.tallies.0,
    })
}

impl Sweep<'_> {
    fn field(&self) -> Field {
        self.a.field()
    }

    fn char_zero(&self) -> bool {
        self.field().is_char_zero()
    }

    fn facts_of(&self, b: &Subspace) -> Result<Facts> {
        let a = self.a;
        Ok(Facts {
            subinvariant: subinvariance::is_subinvariant(a, b)?.subinvariant,
            omega: series::omega(a, b)?,
            square: a.product(b, b)?,
            nilpotent: series::is_nilpotent(a, b)?,
            solvable: series::is_solvable(a, b)?,
        })
    }

    fn fact(&self, b: &Subspace) -> &Facts {
        &self.facts[b]
    }

    fn subinvariant(&self) -> Vec<Subspace> {
        self.candidates.iter().filter(|b| self.fact(b).subinvariant).cloned().collect()
    }

    fn pairs<'s>(&self, list: &'s [Subspace]) -> Vec<(&'s Subspace, &'s Subspace)> {
        let mut out = Vec::new();
        for (i, b) in list.iter().enumerate() {
            for c in &list[i + 1..] {
                if out.len() == self.cfg.max_pairs {
                    return out;
                }
                out.push((b, c));
            }
        }
        out
    }

    /// Structure identities on `A` itself; returns the Cartan subalgebra if found.
    fn structure_claims(&mut self) -> Result<Option<Subspace>> {
        match structure::check_structure_theorems(self.a, self.cfg.cartan_budget, self.cfg.seed) {
            Ok(report) => {
                for c in &report.checks {
                    let outcome = match c.status {
                        CheckStatus::Pass => Outcome::Pass,
                        CheckStatus::Fail => Outcome::Fail(c.detail.clone()),
                        CheckStatus::Vacuous => Outcome::Vacuous,
                        CheckStatus::Skipped => Outcome::Skipped,
                    };
                    self.tallies.record(&c.name, outcome);
                }
                Ok(report.cartan)
            }
            Err(e) => {
                let outcome = outcome_of_error(&e);
                for name in ["radical_products", "solvable_square_nilpotent", "square_meets_radical", "nilradical_of_radical"] {
                    self.tallies.record(name, outcome.clone());
                }
                let cartan = match structure::cartan(self.a, self.cfg.cartan_budget, self.cfg.seed) {
                    Ok(c) => {
                        let omega = series::omega(self.a, &self.full)?;
                        let total = omega.sum(&c.subalgebra)?;
                        self.tallies.record(
                            "cartan_decomposition",
                            check(total.is_full(), || format!("A^ω + H = {total}")),
                        );
                        Some(c.subalgebra)
                    }
                    Err(_) => {
                        self.tallies.record("cartan_decomposition", Outcome::Vacuous);
                        None
                    }
                };
                Ok(cartan)
            }
        }
    }

    fn collect_candidates(&mut self, cartan: Option<&Subspace>) -> Result<()> {
        let a = self.a;
        let n = a.dim();
        let full = self.full.clone();
        let mut raw: Vec<Subspace> = vec![a.zero_space(), full.clone()];
        raw.extend(series::lower_central(a, &full)?.terms);
        raw.extend(series::derived(a, &full)?.terms);
        if let Ok(l) = a.leib_ideal() {
            raw.push(l);
        }
        raw.push(a.left_center());
        raw.push(a.right_center());
        raw.push(a.center());
        if self.char_zero() {
            if let Ok(r) = structure::radical(a) {
                raw.push(r);
            }
            if let Ok(nil) = structure::nilradical(a) {
                raw.push(nil);
            }
        }
        raw.extend(cartan.cloned());
        for i in 0..n {
            let e = a.span_of_units(&[i]);
            raw.push(series::ideal_closure(a, &e, &full)?);
            raw.push(series::subalgebra_closure(a, &e)?);
            raw.push(structure::fitting_null(a, &a.unit(i))?);
        }
        for i in 0..n {
            for j in i + 1..n {
                raw.push(series::subalgebra_closure(a, &a.span_of_units(&[i, j]))?);
            }
        }
        for _ in 0..self.cfg.random_vectors {
            let coeffs: Vec<i64> = (0..n).map(|_| self.rng.gen_range(-2..=2)).collect();
            let x = Vector::from_ints(self.field(), &coeffs);
            raw.push(series::subalgebra_closure(a, &a.span(&[x])?)?);
        }
        // Second-level ideal closures reach subideals that are not ideals of A.
        let ideals: Vec<Subspace> = raw
            .iter()
            .filter(|s| !s.is_zero() && !s.is_full() && a.is_ideal(s).unwrap_or(false))
            .cloned()
            .collect();
        for k in &ideals {
            for v in k.basis() {
                raw.push(series::ideal_closure(a, &a.span(&[v])?, k)?);
            }
        }

        let mut seen = BTreeSet::new();
        for s in raw {
            if self.candidates.len() == self.cfg.max_candidates {
                break;
            }
            if seen.insert(s.clone()) && a.is_subalgebra(&s)? {
                self.candidates.push(s);
            }
        }
        Ok(())
    }

    fn general_claims(&mut self) -> Result<()> {
        let a = self.a;
        let candidates = self.candidates.clone();
        let nilpotent_a = self.fact(&self.full).nilpotent;
        let center = a.center();

        self.leib_check(a);
        self.center_check(a);

        let singles: Vec<Subspace> = (0..a.dim()).map(|i| a.span_of_units(&[i])).collect();
        let mut budget = self.cfg.max_pairs;
        'outer: for b in &candidates {
            for c in candidates.iter().chain(&singles) {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let r = f_power_check(a, b, c);
                self.tallies.record_result("f_power_containment", r);
            }
        }

        for b in &candidates {
            let f = self.fact(b);
            let (sub, omega, square) = (f.subinvariant, f.omega.clone(), f.square.clone());

            if sub {
                let ok = a.is_ideal(&omega)?;
                self.tallies
                    .record("omega_ideal", check(ok, || format!("B = {b}: B^ω = {omega} is not an ideal")));
                if &square == b {
                    let ok = a.is_ideal(b)?;
                    self.tallies
                        .record("perfect_subinvariant_ideal", check(ok, || format!("B = {b} with B² = B is not an ideal")));
                } else {
                    self.tallies.record("perfect_subinvariant_ideal", Outcome::Vacuous);
                }
                let r = self.sub_cartan_check(b, &omega);
                self.tallies.record_result("subinvariant_cartan_decomposition", r);
                let zb = a.centralizer(b, Side::Both)?;
                if zb.is_zero() {
                    let zw = a.centralizer(&omega, Side::Both)?;
                    self.tallies.record(
                        "sub_omega_centralizer",
                        check(zw.is_subspace_of(&omega), || format!("B = {b}: Z(B^ω) = {zw} ⊄ B^ω = {omega}")),
                    );
                } else {
                    self.tallies.record("sub_omega_centralizer", Outcome::Vacuous);
                }
            } else {
                for name in ["omega_ideal", "perfect_subinvariant_ideal", "subinvariant_cartan_decomposition", "sub_omega_centralizer"] {
                    self.tallies.record(name, Outcome::Vacuous);
                }
            }

            if !b.is_zero() && a.is_ideal(b)? {
                if nilpotent_a {
                    let meet = b.intersect(&center)?;
                    self.tallies.record(
                        "ideal_meets_center",
                        check(!meet.is_zero(), || format!("nonzero ideal {b} misses the center {center}")),
                    );
                } else {
                    self.tallies.record("ideal_meets_center", Outcome::Vacuous);
                }
            }

            // Both identities hold for every algebra, so subalgebras give more instances.
            if !b.is_zero() && !b.is_full() {
                let view = a.restrict(b)?;
                self.leib_check(&view.algebra);
                self.center_check(&view.algebra);
            }
        }
        Ok(())
    }

    fn leib_check(&mut self, g: &LeibnizAlgebra) {
        let r = (|| {
            let l = g.leib_ideal()?;
            let ok = l.is_subspace_of(&g.left_center()) && g.is_ideal(&l)?;
            Ok(check(ok, || format!("{}: Leib = {l} is not an ideal inside the left center", g.name())))
        })();
        self.tallies.record_result("leib_in_left_center", r);
    }

    fn center_check(&mut self, g: &LeibnizAlgebra) {
        let r = (|| {
            let w = series::omega(g, &g.full_space())?;
            let zw = g.centralizer(&w, Side::Both)?;
            if zw.is_subspace_of(&w) {
                return Ok(Outcome::Vacuous);
            }
            Ok(check(!g.center().is_zero(), || {
                format!("{}: Z(A^ω) = {zw} ⊄ A^ω = {w} but the center is zero", g.name())
            }))
        })();
        self.tallies.record_result("center_nonzero", r);
    }

    /// `B = B^ω + H` for a Cartan subalgebra `H` of `B`.
    fn sub_cartan_check(&self, b: &Subspace, omega: &Subspace) -> Result<Outcome> {
        if b.is_zero() {
            return Ok(Outcome::Vacuous);
        }
        let view = self.a.restrict(b)?;
        let h = match structure::cartan(&view.algebra, self.cfg.cartan_budget, self.cfg.seed) {
            Ok(c) => view.embed_subspace(&c.subalgebra),
            Err(Error::CartanSearchExhausted { .. }) => return Ok(Outcome::Skipped),
            Err(e) => return Err(e),
        };
        let total = omega.sum(&h)?;
        Ok(check(&total == b, || format!("B = {b}: B^ω + H = {total}")))
    }

    fn pair_claims(&mut self) -> Result<()> {
        let a = self.a;
        let candidates = self.candidates.clone();
        let subinv = self.subinvariant();

        // Transitivity: C subinvariant in a subinvariant B is subinvariant in A.
        let mut budget = self.cfg.max_pairs;
        'outer: for b in &subinv {
            if b.is_zero() {
                continue;
            }
            let view = a.restrict(b)?;
            for c in &candidates {
                if c == b || !c.is_subspace_of(b) {
                    continue;
                }
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let local = view.restrict_subspace(c)?;
                if subinvariance::is_subinvariant(&view.algebra, &local)?.subinvariant {
                    let ok = self.fact(c).subinvariant;
                    self.tallies.record(
                        "basic_transitivity",
                        check(ok, || format!("{c} is subinvariant in {b}, which is subinvariant, but not in A")),
                    );
                } else {
                    self.tallies.record("basic_transitivity", Outcome::Vacuous);
                }
            }
        }

        for (b, c) in self.pairs(&subinv) {
            let m = b.intersect(c)?;
            let ok = subinvariance::is_subinvariant(a, &m)?.subinvariant;
            self.tallies
                .record("basic_intersection", check(ok, || format!("{b} ∩ {c} = {m} is not subinvariant")));
        }

        let mut budget = self.cfg.max_pairs;
        'outer: for k in &candidates {
            if k.is_zero() {
                continue;
            }
            let view = a.restrict(k)?;
            for b in &subinv {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let m = view.restrict_subspace(&k.intersect(b)?)?;
                let ok = subinvariance::is_subinvariant(&view.algebra, &m)?.subinvariant;
                self.tallies
                    .record("basic_restriction", check(ok, || format!("{k} ∩ {b} is not subinvariant in {k}")));
            }
        }

        let quotients: Vec<&Subspace> = candidates
            .iter()
            .filter(|i| !i.is_zero() && !i.is_full() && a.is_ideal(i).unwrap_or(false))
            .take(3)
            .collect();
        for i in quotients {
            let q = a.quotient(i)?;
            for b in &subinv {
                let image = q.project_subspace(b);
                let ok = subinvariance::is_subinvariant(&q.algebra, &image)?.subinvariant;
                self.tallies
                    .record("basic_image", check(ok, || format!("image of {b} modulo {i} is not subinvariant")));
            }
        }

        for (b, c) in self.pairs(&subinv) {
            let d = series::subalgebra_closure(a, &b.sum(c)?)?;
            let d_sub = subinvariance::is_subinvariant(a, &d)?.subinvariant;
            let detail = || format!("join {d} of {b} and {c} is not subinvariant");
            let outcome = if self.char_zero() {
                check(d_sub, detail)
            } else if d_sub {
                Outcome::Pass
            } else {
                Outcome::Finding(detail())
            };
            self.tallies.record("subinvariant_join", outcome);

            if self.fact(b).nilpotent && self.fact(c).nilpotent {
                let ok = d_sub && series::is_nilpotent(a, &d)?;
                let detail = || format!("join {d} of nilpotent {b} and {c} is not nilpotent subinvariant");
                let outcome = if self.char_zero() {
                    check(ok, detail)
                } else if ok {
                    Outcome::Pass
                } else {
                    Outcome::Finding(detail())
                };
                self.tallies.record("nilpotent_join", outcome);
            } else {
                self.tallies.record("nilpotent_join", Outcome::Vacuous);
            }
        }
        Ok(())
    }

    fn radical_claims(&mut self) -> Result<()> {
        let a = self.a;
        let subinv = self.subinvariant();
        if !self.char_zero() {
            // Char-free consequences: the ideal closure of a solvable (nilpotent)
            // subinvariant subalgebra would be a solvable (nilpotent) ideal.
            for s in &subinv {
                let f = self.fact(s);
                let (solv, nil) = (f.solvable, f.nilpotent);
                let closure = series::ideal_closure(a, s, &self.full)?;
                if solv {
                    let ok = series::is_solvable(a, &closure)?;
                    self.tallies.record(
                        "solvable_subinvariant_in_radical",
                        if ok { Outcome::Pass } else { Outcome::Finding(format!("solvable subinvariant {s} has non-solvable ideal closure {closure}")) },
                    );
                } else {
                    self.tallies.record("solvable_subinvariant_in_radical", Outcome::Vacuous);
                }
                if nil {
                    let ok = series::is_nilpotent(a, &closure)?;
                    self.tallies.record(
                        "nilpotent_subinvariant_in_nilradical",
                        if ok { Outcome::Pass } else { Outcome::Finding(format!("nilpotent subinvariant {s} has non-nilpotent ideal closure {closure}")) },
                    );
                } else {
                    self.tallies.record("nilpotent_subinvariant_in_nilradical", Outcome::Vacuous);
                }
            }
            for name in ["ideal_radicals", "subinvariant_radicals"] {
                self.tallies.record(name, Outcome::Skipped);
            }
            return Ok(());
        }

        let (r, nil) = match structure::radical(a).and_then(|r| Ok((r.clone(), structure::nilradical(a)?))) {
            Ok(pair) => pair,
            Err(e) => {
                let o = outcome_of_error(&e);
                for name in ["solvable_subinvariant_in_radical", "nilpotent_subinvariant_in_nilradical", "ideal_radicals", "subinvariant_radicals"] {
                    self.tallies.record(name, o.clone());
                }
                return Ok(());
            }
        };

        for s in &subinv {
            let f = self.fact(s);
            let (solv, nilp) = (f.solvable, f.nilpotent);
            if solv {
                self.tallies.record(
                    "solvable_subinvariant_in_radical",
                    check(s.is_subspace_of(&r), || format!("solvable subinvariant {s} ⊄ rad = {r}")),
                );
            } else {
                self.tallies.record("solvable_subinvariant_in_radical", Outcome::Vacuous);
            }
            if nilp {
                self.tallies.record(
                    "nilpotent_subinvariant_in_nilradical",
                    check(s.is_subspace_of(&nil), || format!("nilpotent subinvariant {s} ⊄ nilrad = {nil}")),
                );
            } else {
                self.tallies.record("nilpotent_subinvariant_in_nilradical", Outcome::Vacuous);
            }
            if !s.is_zero() {
                let res = local_radicals(a, s).and_then(|(rb, nb)| {
                    let (rr, nn) = (s.intersect(&r)?, s.intersect(&nil)?);
                    Ok(check(rb == rr && nb == nn, || {
                        format!("B = {s}: rad(B) = {rb} vs B ∩ rad = {rr}; nilrad(B) = {nb} vs B ∩ nilrad = {nn}")
                    }))
                });
                self.tallies.record_result("subinvariant_radicals", res);
            }
        }

        for b in self.candidates.clone() {
            if b.is_zero() || !a.is_ideal(&b)? {
                continue;
            }
            let res = local_radicals(a, &b).and_then(|(rb, nb)| {
                let ok = a.is_ideal(&rb)? && a.is_ideal(&nb)? && a.two_sided_product(&self.full, &rb)?.is_subspace_of(&nb);
                Ok(check(ok, || format!("ideal {b}: rad = {rb}, nilrad = {nb}")))
            });
            self.tallies.record_result("ideal_radicals", res);
        }
        Ok(())
    }

    fn closure_claims(&mut self) -> Result<()> {
        let a = self.a;
        let n = a.dim();
        let mut elements: Vec<Vector> = (0..n).map(|i| a.unit(i)).collect();
        for _ in 0..self.cfg.random_vectors {
            let coeffs: Vec<i64> = (0..n).map(|_| self.rng.gen_range(-2..=2)).collect();
            elements.push(Vector::from_ints(self.field(), &coeffs));
        }
        let mut budget = self.cfg.max_pairs;
        'outer: for b in self.subinvariant() {
            for c in &elements {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let bar = match subinvariance::bar_closure(a, c, &b) {
                    Ok(v) => v,
                    Err(e) => {
                        self.tallies.record("bar_closure_subinvariant", outcome_of_error(&e));
                        continue;
                    }
                };
                let ok = subinvariance::is_subinvariant(a, &bar)?.subinvariant;
                let detail = || format!("closure {bar} of {b} under f({c}, -) is not subinvariant");
                let outcome = if self.char_zero() {
                    check(ok, detail)
                } else if ok {
                    Outcome::Pass
                } else {
                    Outcome::Finding(detail())
                };
                self.tallies.record("bar_closure_subinvariant", outcome);

                let orbit = subinvariance::orbit_span(a, c, &b)?;
                self.tallies.record(
                    "bar_closure_orbit_span",
                    check(orbit == bar, || format!("B = {b}, c = {c}: orbit span {orbit} ≠ closure {bar}")),
                );
            }
        }
        Ok(())
    }

    /// The subalgebra generated by the subinvariant subalgebras inside `B` is
    /// an ideal of `B`; rational algebras are checked on their reduction mod a prime.
    fn underline_claims(&mut self) -> Result<()> {
        let a = self.a;
        let (target, char_zero) = if self.char_zero() {
            match a.reduce_mod(self.cfg.underline_prime) {
                Ok(r) => (r, true),
                Err(e) => {
                    self.tallies.record("underline_ideal", outcome_of_error(&e));
                    return Ok(());
                }
            }
        } else {
            (a.clone(), false)
        };
        for b in self.candidates.clone() {
            if b.dim() > self.cfg.underline_max_dim {
                continue;
            }
            let local = if char_zero {
                match reduce_subspace(&b, target.field()) {
                    Ok(s) if target.is_subalgebra(&s)? => s,
                    Ok(_) => {
                        self.tallies.record("underline_ideal", Outcome::Skipped);
                        continue;
                    }
                    Err(e) => {
                        self.tallies.record("underline_ideal", outcome_of_error(&e));
                        continue;
                    }
                }
            } else {
                b.clone()
            };
            match subinvariance::underline_b(&target, &local) {
                Ok(u) => {
                    let detail = || format!("B = {b}: generated subalgebra {} is not an ideal of B", u.span);
                    let outcome = if char_zero || u.ideal_of_b {
                        check(u.ideal_of_b, detail)
                    } else {
                        Outcome::Finding(detail())
                    };
                    self.tallies.record("underline_ideal", outcome);
                }
                Err(e) => self.tallies.record("underline_ideal", outcome_of_error(&e)),
            }
        }
        Ok(())
    }
}

/// `f(B^k, C) ⊆ f^k(B, C)` for `k = 1..=5`.
fn f_power_check(a: &LeibnizAlgebra, b: &Subspace, c: &Subspace) -> Result<Outcome> {
    for k in 1..=5 {
        let lhs = series::f_pair(a, &series::power(a, b, k)?, c)?;
        let rhs = series::f_iter(a, b, c, k)?;
        if !lhs.is_subspace_of(&rhs) {
            return Ok(Outcome::Fail(format!("B = {b}, C = {c}, k = {k}: {lhs} ⊄ {rhs}")));
        }
    }
    Ok(Outcome::Pass)
}

/// Radical and nilradical of the subalgebra `B`, embedded back into `A`.
fn local_radicals(a: &LeibnizAlgebra, b: &Subspace) -> Result<(Subspace, Subspace)> {
    let view = a.restrict(b)?;
    let rb = structure::radical(&view.algebra)?;
    let nb = structure::nilradical(&view.algebra)?;
    Ok((view.embed_subspace(&rb), view.embed_subspace(&nb)))
}

/// Entrywise reduction of a rational subspace into `F_p`.
pub fn reduce_subspace(s: &Subspace, field: Field) -> Result<Subspace> {
    let vs = s
        .basis()
        .iter()
        .map(|v| {
            let coords = v
                .coords()
                .iter()
                .map(|c| match c.as_rational() {
                    Some(q) => field.from_rational(q),
                    None => Err(Error::UnsupportedField(c.field().to_string())),
                })
                .collect::<Result<Vec<_>>>()?;
            Vector::new(field, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    let r = Subspace::from_vectors(field, s.ambient_dim(), &vs)?;
    if r.dim() != s.dim() {
        return Err(Error::DenominatorDivisibleByP {
            text: s.to_string(),
            p: field.characteristic(),
        });
    }
    Ok(r)
}
