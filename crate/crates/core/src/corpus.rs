//! Built-in algebras, parametric families and seeded random draws.
//!
//! Random algebras come only from constructions that preserve the Leibniz
//! identity (cyclic algebras, Lie algebras acting on modules, derivation
//! extensions, direct sums). Every output still goes through validation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{LeibnizAlgebra, TableBuilder};
use crate::derivations;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::Field;

/// Basis `x, y, z, t`: `tx = x`, `ty = y`, `zy = x`.
pub fn example_e4(field: Field) -> LeibnizAlgebra {
    let mut b = TableBuilder::new(field, 4);
    b.add_int(3, 0, 0, 1).add_int(3, 1, 1, 1).add_int(2, 1, 0, 1);
    b.build("E4").expect("E4 is left Leibniz")
}

/// Basis `e, h, f`.
pub fn sl2(field: Field) -> LeibnizAlgebra {
    let (e, h, f) = (0, 1, 2);
    let mut b = TableBuilder::new(field, 3);
    b.add_int(h, e, e, 2).add_int(e, h, e, -2);
    b.add_int(h, f, f, -2).add_int(f, h, f, 2);
    b.add_int(e, f, h, 1).add_int(f, e, h, -1);
    b.build("sl2").expect("sl2 is Lie")
}

/// Basis `x, y, z`: `xy = z = -yx`.
pub fn heisenberg(field: Field) -> LeibnizAlgebra {
    let mut b = TableBuilder::new(field, 3);
    b.add_int(0, 1, 2, 1).add_int(1, 0, 2, -1);
    b.build("heisenberg").expect("heisenberg is Lie")
}

/// Basis `h, x`: `hx = x = -xh`.
pub fn aff1(field: Field) -> LeibnizAlgebra {
    let mut b = TableBuilder::new(field, 2);
    b.add_int(0, 1, 1, 1).add_int(1, 0, 1, -1);
    b.build("aff1").expect("aff(1) is Lie")
}

/// Basis `h, x, y`: `[h, x] = x`, `[h, y] = y`.
pub fn r3(field: Field) -> LeibnizAlgebra {
    let mut b = TableBuilder::new(field, 3);
    for v in [1, 2] {
        b.add_int(0, v, v, 1).add_int(v, 0, v, -1);
    }
    b.build("r3").expect("r3 is Lie")
}

pub fn abelian(field: Field, n: usize) -> LeibnizAlgebra {
    TableBuilder::new(field, n)
        .build(format!("abelian{n}"))
        .expect("zero product is Leibniz")
}

/// Cyclic algebra on `a^1, ..., a^n` with `n = alphas.len() + 1`:
/// `a a^i = a^{i+1}` for `i < n`, `a a^n = sum_{i >= 2} alpha_i a^i`,
/// all other basis products zero. `alphas[0]` is `alpha_2`.
pub fn cyclic(field: Field, alphas: &[i64]) -> Result<LeibnizAlgebra> {
    if alphas.is_empty() {
        return Err(Error::InvalidParams("cyclic algebra needs at least alpha_2".into()));
    }
    let n = alphas.len() + 1;
    let mut b = TableBuilder::new(field, n);
    for i in 0..n - 1 {
        b.add_int(0, i, i + 1, 1);
    }
    for (k, &alpha) in alphas.iter().enumerate() {
        if alpha != 0 {
            b.add_int(0, n - 1, k + 1, alpha);
        }
    }
    b.build(format!("cyclic{alphas:?}"))
}

/// `P = (sl2 ⊗ F_p[a]/(a^p)) ⋊ δ` with `δ = 1 ⊗ d/da`, over `F_p`.
#[derive(Clone, Debug)]
pub struct CharPParts {
    pub algebra: LeibnizAlgebra,
    /// `sl2 ⊗ F_p[a]/(a^p)`, the first `3p` coordinates.
    pub m: Subspace,
    /// `sl2 ⊗ aF_p[a]`, coordinates `3..3p`.
    pub l_tensor_n: Subspace,
}

/// Basis index of `x ⊗ a^s` is `3s + x` with `x` in `e, h, f`; `δ` is last.
pub fn char_p_parts(p: u64) -> Result<CharPParts> {
    if !matches!(p, 3 | 5 | 7) {
        return Err(Error::UnsupportedP(p));
    }
    let field = Field::prime(p)?;
    let deg = p as usize;
    let base = sl2(field);
    let n = 3 * deg;
    let mut b = TableBuilder::new(field, n);
    for s in 0..deg {
        for t in 0..deg - s {
            for x in 0..3 {
                for y in 0..3 {
                    let prod = base.basis_product(x, y);
                    for (k, c) in prod.coords().iter().enumerate() {
                        if !c.is_zero() {
                            b.add(3 * s + x, 3 * t + y, 3 * (s + t) + k, c.clone())?;
                        }
                    }
                }
            }
        }
    }
    let m_alg = b.build(format!("sl2⊗F{p}[a]/(a^{p})"))?;
    let mut d = Matrix::zeros(field, n, n);
    for s in 1..deg {
        for x in 0..3 {
            d.set(3 * (s - 1) + x, 3 * s + x, field.from_u64(s as u64));
        }
    }
    let algebra = m_alg.semidirect_by_derivation(&d)?.with_name(format!("P{p}"));
    let m = algebra.span_of_units(&(0..n).collect::<Vec<_>>());
    let l_tensor_n = algebra.span_of_units(&(3..n).collect::<Vec<_>>());
    Ok(CharPParts {
        algebra,
        m,
        l_tensor_n,
    })
}

pub fn example_char_p(p: u64) -> Result<LeibnizAlgebra> {
    Ok(char_p_parts(p)?.algebra)
}

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

/// Parametric constructions. All of them produce left Leibniz algebras
/// whenever their parameters are well-formed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    Cyclic { alphas: Vec<i64> },
    Sl2,
    Heisenberg,
    Aff1,
    R3,
    Abelian { n: usize },
    DirectSum { parts: Vec<FamilyKind> },
    /// `base ⋊ D` for a seeded integer combination `D` of a basis of `Der(base)`; `base` must be Lie.
    Semidirect { base: Box<FamilyKind>, derivation_seed: u64 },
    /// `g ⊕ V` with `(x, v)(y, w) = ([x, y], ρ(x) w)`; `rep[i]` is `ρ(e_i)`, and `ρ` must be a representation of the Lie algebra `base`.
    Hemisemidirect { base: Box<FamilyKind>, rep: Vec<IntMatrix> },
}

impl FamilyKind {
    pub fn dim(&self) -> usize {
        match self {
            FamilyKind::Cyclic { alphas } => alphas.len() + 1,
            FamilyKind::Sl2 | FamilyKind::Heisenberg | FamilyKind::R3 => 3,
            FamilyKind::Aff1 => 2,
            FamilyKind::Abelian { n } => *n,
            FamilyKind::DirectSum { parts } => parts.iter().map(FamilyKind::dim).sum(),
            FamilyKind::Semidirect { base, .. } => base.dim() + 1,
            FamilyKind::Hemisemidirect { base, rep } => {
                base.dim() + rep.first().map_or(0, |m| m.len())
            }
        }
    }
}

pub fn family(field: Field, kind: &FamilyKind) -> Result<LeibnizAlgebra> {
    match kind {
        FamilyKind::Cyclic { alphas } => cyclic(field, alphas),
        FamilyKind::Sl2 => Ok(sl2(field)),
        FamilyKind::Heisenberg => Ok(heisenberg(field)),
        FamilyKind::Aff1 => Ok(aff1(field)),
        FamilyKind::R3 => Ok(r3(field)),
        FamilyKind::Abelian { n } => Ok(abelian(field, *n)),
        FamilyKind::DirectSum { parts } => {
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::InvalidParams("direct sum of nothing".into()))?;
            let mut acc = family(field, first)?;
            for part in iter {
                acc = acc.direct_sum(&family(field, part)?)?;
            }
            Ok(acc)
        }
        FamilyKind::Semidirect {
            base,
            derivation_seed,
        } => {
            let g = family(field, base)?;
            if !g.is_lie() {
                return Err(Error::InvalidParams("derivation extensions need a Lie base".into()));
            }
            let der = derivations::derivation_basis(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(*derivation_seed);
            let n = g.dim();
            let mut d = Matrix::zeros(field, n, n);
            for m in &der {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    d = d.add(&m.scale(&field.from_i64(c)));
                }
            }
            g.semidirect_by_derivation(&d)
        }
        FamilyKind::Hemisemidirect { base, rep } => hemisemidirect(&family(field, base)?, rep),
    }
}

fn int_matrix(field: Field, m: &IntMatrix) -> Matrix {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    Matrix::from_ints(field, &rows)
}

/// `g ⊕ V` with product `(x, v)(y, w) = ([x, y], ρ(x) w)`. This is left Leibniz
/// exactly when `ρ` is a representation.
pub fn hemisemidirect(g: &LeibnizAlgebra, rep: &[IntMatrix]) -> Result<LeibnizAlgebra> {
    let field = g.field();
    let m = g.dim();
    if rep.len() != m {
        return Err(Error::InvalidParams(format!("need {m} representation matrices, got {}", rep.len())));
    }
    if !g.is_lie() {
        return Err(Error::InvalidParams("hemisemidirect products need a Lie base".into()));
    }
    let k = rep.first().map_or(0, |r| r.len());
    if rep.iter().any(|r| r.len() != k || r.iter().any(|row| row.len() != k)) {
        return Err(Error::InvalidParams("representation matrices must be square of one size".into()));
    }
    let mats: Vec<Matrix> = rep.iter().map(|r| int_matrix(field, r)).collect();
    for i in 0..m {
        for j in 0..m {
            let mut expected = Matrix::zeros(field, k, k);
            for (l, c) in g.basis_product(i, j).coords().iter().enumerate() {
                if !c.is_zero() {
                    expected = expected.add(&mats[l].scale(c));
                }
            }
            if mats[i].commutator(&mats[j]) != expected {
                return Err(Error::InvalidParams(format!(
                    "matrices do not represent the bracket of e{} and e{}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let n = m + k;
    let mut b = TableBuilder::new(field, n);
    for i in 0..m {
        for j in 0..m {
            let mut c = g.basis_product(i, j).coords().to_vec();
            c.resize(n, field.zero());
            b.set_product(i, j, &Vector::new(field, c)?);
        }
        for col in 0..k {
            for row in 0..k {
                let c = mats[i].get(row, col);
                if !c.is_zero() {
                    b.add(i, m + col, m + row, c.clone())?;
                }
            }
        }
    }
    b.build(format!("{}⋉V{k}", g.name()))
}

/// Where a known fact comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated for a worked example in the literature.
    PublishedExample,
    /// Computed by hand from the table.
    HandDerived,
    /// Immediate from the definitions.
    Trivial,
    /// Produced by a seeded random construction.
    Generated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    LeftCenter(Subspace),
    Center(Subspace),
    Omega(Subspace),
    Radical(Subspace),
    Nilradical(Subspace),
    /// The subspace is a Cartan subalgebra.
    IsCartan(Subspace),
    Subinvariant(Subspace, bool),
    IdealClosure { generators: Subspace, closure: Subspace },
    Nilpotent(bool),
    Solvable(bool),
    Lie(bool),
}

#[derive(Clone, Debug)]
pub struct KnownFact {
    pub fact: Fact,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: LeibnizAlgebra,
    pub provenance: Provenance,
    pub family: Option<FamilyKind>,
    pub facts: Vec<KnownFact>,
}

impl CorpusEntry {
    fn new(algebra: LeibnizAlgebra, provenance: Provenance) -> CorpusEntry {
        CorpusEntry {
            name: algebra.name().to_string(),
            algebra,
            provenance,
            family: None,
            facts: Vec::new(),
        }
    }

    fn fact(mut self, fact: Fact, provenance: Provenance) -> CorpusEntry {
        self.facts.push(KnownFact { fact, provenance });
        self
    }
}

/// Named algebras with their established facts. The characteristic-p example
/// is over `F_3`; everything else is over the rationals.
pub fn builtins() -> Vec<CorpusEntry> {
    use Fact::*;
    use Provenance::*;
    let q = Field::Rationals;
    let mut out = Vec::new();

    let e4 = example_e4(q);
    let u = |a: &LeibnizAlgebra, idx: &[usize]| a.span_of_units(idx);
    out.push(
        CorpusEntry::new(e4.clone(), PublishedExample)
            .fact(LeftCenter(u(&e4, &[0, 1])), HandDerived)
            .fact(Center(e4.zero_space()), HandDerived)
            .fact(Omega(u(&e4, &[0, 1])), HandDerived)
            .fact(Radical(e4.full_space()), HandDerived)
            .fact(Nilradical(u(&e4, &[0, 1, 2])), HandDerived)
            .fact(IsCartan(u(&e4, &[2, 3])), PublishedExample)
            .fact(Subinvariant(u(&e4, &[2]), true), PublishedExample)
            .fact(Subinvariant(u(&e4, &[2, 3]), false), HandDerived)
            .fact(Nilpotent(false), HandDerived)
            .fact(Solvable(true), HandDerived)
            .fact(Lie(false), Trivial),
    );

    let s = sl2(q);
    out.push(
        CorpusEntry::new(s.clone(), Trivial)
            .fact(Center(s.zero_space()), Trivial)
            .fact(Omega(s.full_space()), Trivial)
            .fact(Radical(s.zero_space()), Trivial)
            .fact(Nilradical(s.zero_space()), Trivial)
            .fact(IsCartan(u(&s, &[1])), Trivial)
            .fact(Subinvariant(u(&s, &[1]), false), Trivial)
            .fact(Lie(true), Trivial),
    );

    let h = heisenberg(q);
    out.push(
        CorpusEntry::new(h.clone(), Trivial)
            .fact(Center(u(&h, &[2])), Trivial)
            .fact(Omega(h.zero_space()), Trivial)
            .fact(Radical(h.full_space()), Trivial)
            .fact(Nilradical(h.full_space()), Trivial)
            .fact(IsCartan(h.full_space()), Trivial)
            .fact(Subinvariant(u(&h, &[0]), true), Trivial)
            .fact(Nilpotent(true), Trivial),
    );

    let a = aff1(q);
    out.push(
        CorpusEntry::new(a.clone(), Trivial)
            .fact(Center(a.zero_space()), Trivial)
            .fact(Omega(u(&a, &[1])), Trivial)
            .fact(Radical(a.full_space()), Trivial)
            .fact(Nilradical(u(&a, &[1])), Trivial)
            .fact(IsCartan(u(&a, &[0])), Trivial)
            .fact(Subinvariant(u(&a, &[0]), false), Trivial),
    );

    let r = r3(q);
    out.push(
        CorpusEntry::new(r.clone(), HandDerived)
            .fact(Center(r.zero_space()), HandDerived)
            .fact(Omega(u(&r, &[1, 2])), HandDerived)
            .fact(Radical(r.full_space()), HandDerived)
            .fact(Nilradical(u(&r, &[1, 2])), HandDerived)
            .fact(IsCartan(u(&r, &[0])), HandDerived),
    );

    let ab = abelian(q, 3);
    out.push(
        CorpusEntry::new(ab.clone(), Trivial)
            .fact(Nilradical(ab.full_space()), Trivial)
            .fact(Subinvariant(u(&ab, &[1]), true), Trivial),
    );

    let nil = cyclic(q, &[0, 0]).expect("valid parameters");
    out.push(
        CorpusEntry::new(nil.clone(), Trivial)
            .fact(Omega(nil.zero_space()), Trivial)
            .fact(Nilpotent(true), Trivial)
            .fact(Nilradical(nil.full_space()), Trivial),
    );

    let c2 = cyclic(q, &[1]).expect("valid parameters");
    out.push(
        CorpusEntry::new(c2.clone(), HandDerived)
            .fact(Omega(u(&c2, &[1])), HandDerived)
            .fact(Nilpotent(false), HandDerived)
            .fact(Radical(c2.full_space()), HandDerived)
            .fact(LeftCenter(u(&c2, &[1])), HandDerived),
    );

    let sum = s.direct_sum(&e4).expect("same field");
    out.push(
        CorpusEntry::new(sum.clone(), HandDerived)
            .fact(Radical(u(&sum, &[3, 4, 5, 6])), HandDerived)
            .fact(Nilradical(u(&sum, &[3, 4, 5])), HandDerived),
    );

    let p3 = char_p_parts(3).expect("p = 3 is supported");
    out.push(
        CorpusEntry::new(p3.algebra.clone(), PublishedExample)
            .fact(Subinvariant(p3.l_tensor_n.clone(), true), PublishedExample)
            .fact(
                IdealClosure {
                    generators: p3.l_tensor_n.clone(),
                    closure: p3.m.clone(),
                },
                PublishedExample,
            )
            .fact(Lie(true), PublishedExample),
    );
    out
}

/// Builtins whose constants are integers and whose dimension is at most
/// `max_dim`, reduced into `F_p`.
pub fn reduced_builtins(p: u64, max_dim: usize) -> Result<Vec<LeibnizAlgebra>> {
    let mut out = Vec::new();
    for e in builtins() {
        let a = &e.algebra;
        if a.field().is_char_zero() && a.dim() <= max_dim && a.has_integer_constants() {
            out.push(a.reduce_mod(p)?.with_name(format!("{} mod {p}", e.name)));
        }
    }
    Ok(out)
}

/// A random unimodular integer matrix and its inverse.
fn unimodular(rng: &mut ChaCha8Rng, k: usize) -> (IntMatrix, IntMatrix) {
    let mut u: IntMatrix = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let mut inv = u.clone();
    if k < 2 {
        return (u, inv);
    }
    for _ in 0..k + 1 {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // u <- (I + c E_ij) u ; inv <- inv (I - c E_ij)
        for col in 0..k {
            u[i][col] += c * u[j][col];
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (u, inv)
}

fn imul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
    let k: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; k]; k];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[off + i][off + j] = v;
            }
        }
        off += b.len();
    }
    out
}

fn conjugate(rep: Vec<IntMatrix>, rng: &mut ChaCha8Rng) -> Vec<IntMatrix> {
    let k = rep.first().map_or(0, Vec::len);
    let (u, inv) = unimodular(rng, k);
    rep.iter().map(|r| imul(&imul(&u, r), &inv)).collect()
}

fn sl2_module(rng: &mut ChaCha8Rng, k: usize) -> Vec<IntMatrix> {
    let std = [
        vec![vec![0, 1], vec![0, 0]],
        vec![vec![1, 0], vec![0, -1]],
        vec![vec![0, 0], vec![1, 0]],
    ];
    // Adjoint in the basis (e, h, f).
    let adj = [
        vec![vec![0, -2, 0], vec![0, 0, 1], vec![0, 0, 0]],
        vec![vec![2, 0, 0], vec![0, 0, 0], vec![0, 0, -2]],
        vec![vec![0, 0, 0], vec![-1, 0, 0], vec![0, 2, 0]],
    ];
    let mut blocks: Vec<[IntMatrix; 3]> = Vec::new();
    let mut left = k;
    while left > 0 {
        let choice = rng.gen_range(0..3);
        if choice == 2 && left >= 3 {
            blocks.push(adj.clone());
            left -= 3;
        } else if choice >= 1 && left >= 2 {
            blocks.push(std.clone());
            left -= 2;
        } else {
            blocks.push([vec![vec![0]], vec![vec![0]], vec![vec![0]]]);
            left -= 1;
        }
    }
    let rep = (0..3)
        .map(|g| block_diag(&blocks.iter().map(|b| b[g].clone()).collect::<Vec<_>>()))
        .collect();
    conjugate(rep, rng)
}

/// `ρ(h) = diag(c, c+1, ...)`, `ρ(x)` a chain shift, on each block.
fn aff1_module(rng: &mut ChaCha8Rng, k: usize) -> Vec<IntMatrix> {
    let mut hs = Vec::new();
    let mut xs = Vec::new();
    let mut left = k;
    while left > 0 {
        let len = rng.gen_range(1..=left.min(3));
        let c: i64 = rng.gen_range(-1..=1);
        let shift = rng.gen_bool(0.7);
        let mut h = vec![vec![0; len]; len];
        let mut x = vec![vec![0; len]; len];
        for i in 0..len {
            h[i][i] = if shift { c + i as i64 } else { c };
            if shift && i + 1 < len {
                x[i + 1][i] = 1;
            }
        }
        hs.push(h);
        xs.push(x);
        left -= len;
    }
    conjugate(vec![block_diag(&hs), block_diag(&xs)], rng)
}

/// Commuting matrices for an abelian base: polynomials in one random matrix.
fn abelian_module(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Vec<IntMatrix> {
    let nilpotent = rng.gen_bool(0.4);
    let x: IntMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if nilpotent && j >= i {
                        0
                    } else {
                        rng.gen_range(-1..=1)
                    }
                })
                .collect()
        })
        .collect();
    let id: IntMatrix = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let x2 = imul(&x, &x);
    let rep = (0..m)
        .map(|_| {
            let (a, b, c): (i64, i64, i64) = (
                if nilpotent { 0 } else { rng.gen_range(-1..=1) },
                rng.gen_range(-1..=1),
                rng.gen_range(-1..=1),
            );
            (0..k)
                .map(|i| (0..k).map(|j| a * id[i][j] + b * x[i][j] + c * x2[i][j]).collect())
                .collect()
        })
        .collect();
    conjugate(rep, rng)
}

fn random_alphas(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect()
}

/// A Lie algebra description of exactly dimension `d >= 1`.
fn random_lie(rng: &mut ChaCha8Rng, d: usize) -> FamilyKind {
    let mut options: Vec<FamilyKind> = vec![FamilyKind::Abelian { n: d }];
    match d {
        2 => options.push(FamilyKind::Aff1),
        3 => options.extend([FamilyKind::Sl2, FamilyKind::Heisenberg, FamilyKind::R3]),
        _ => {}
    }
    if d >= 3 {
        let lower = random_lie(rng, d - 1);
        options.push(FamilyKind::Semidirect {
            base: Box::new(lower),
            derivation_seed: rng.gen(),
        });
        for piece in [2, 3] {
            if d > piece {
                let head = match piece {
                    2 => FamilyKind::Aff1,
                    _ => [FamilyKind::Sl2, FamilyKind::Heisenberg, FamilyKind::R3]
                        .choose(rng)
                        .expect("nonempty")
                        .clone(),
                };
                options.push(FamilyKind::DirectSum {
                    parts: vec![head, random_lie(rng, d - piece)],
                });
            }
        }
    }
    options.choose(rng).expect("nonempty").clone()
}

/// A random family description of dimension `d >= 2`.
pub fn random_kind(rng: &mut ChaCha8Rng, d: usize) -> FamilyKind {
    assert!(d >= 2, "random algebras start at dimension 2");
    let branch = rng.gen_range(0..7);
    match branch {
        0 => FamilyKind::Cyclic {
            alphas: random_alphas(rng, d),
        },
        1 => {
            let m = rng.gen_range(1..=(d - 1).min(3));
            FamilyKind::Hemisemidirect {
                base: Box::new(FamilyKind::Abelian { n: m }),
                rep: abelian_module(rng, m, d - m),
            }
        }
        2 if d >= 4 => FamilyKind::Hemisemidirect {
            base: Box::new(FamilyKind::Sl2),
            rep: sl2_module(rng, d - 3),
        },
        3 if d >= 3 => FamilyKind::Hemisemidirect {
            base: Box::new(FamilyKind::Aff1),
            rep: aff1_module(rng, d - 2),
        },
        4 if d >= 3 => FamilyKind::Semidirect {
            base: Box::new(random_lie(rng, d - 1)),
            derivation_seed: rng.gen(),
        },
        5 if d >= 4 => {
            let left = rng.gen_range(2..=d - 2);
            FamilyKind::DirectSum {
                parts: vec![random_kind(rng, left), random_kind(rng, d - left)],
            }
        }
        6 => random_lie(rng, d),
        _ => FamilyKind::Cyclic {
            alphas: random_alphas(rng, d),
        },
    }
}

/// `count` seeded algebras with dimensions in `dims`, over `field`.
pub fn seeded_corpus(
    field: Field,
    count: usize,
    seed: u64,
    dims: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let d = rng.gen_range(dims.clone());
        let kind = random_kind(&mut rng, d);
        let algebra = family(field, &kind)?.with_name(format!("random{seed}-{idx}"));
        out.push(CorpusEntry {
            name: algebra.name().to_string(),
            algebra,
            provenance: Provenance::Generated,
            family: Some(kind),
            facts: Vec::new(),
        });
    }
    Ok(out)
}

/// Builtins over the rationals followed by `random` seeded draws of dimension 2 to 8.
pub fn standard_corpus(random: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = builtins()
        .into_iter()
        .filter(|e| e.algebra.field().is_char_zero())
        .collect();
    out.extend(seeded_corpus(Field::Rationals, random, seed, 2..=8)?);
    Ok(out)
}

/// Algebras over `F_p` of dimension at most `max_dim`: reduced builtins plus seeded draws.
pub fn small_field_corpus(p: u64, max_dim: usize, random: usize, seed: u64) -> Result<Vec<LeibnizAlgebra>> {
    let field = Field::prime(p)?;
    let mut out = reduced_builtins(p, max_dim)?;
    out.extend((1..=max_dim).map(|n| abelian(field, n)));
    if max_dim >= 2 {
        for e in seeded_corpus(field, random, seed, 2..=max_dim)? {
            out.push(e.algebra);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series;

    const Q: Field = Field::Rationals;

    #[test]
    fn builtins_validate_and_have_expected_dims() {
        let dims: Vec<(String, usize)> = builtins()
            .iter()
            .map(|e| (e.name.clone(), e.algebra.dim()))
            .collect();
        assert!(dims.contains(&("E4".into(), 4)));
        assert!(dims.contains(&("P3".into(), 10)));
        assert_eq!(example_char_p(5).unwrap().dim(), 16);
        assert_eq!(example_char_p(2).unwrap_err(), Error::UnsupportedP(2));
        assert_eq!(example_char_p(11).unwrap_err(), Error::UnsupportedP(11));
    }

    #[test]
    fn e4_over_small_fields() {
        for p in [2, 3, 5] {
            let a = example_e4(Field::prime(p).unwrap());
            assert_eq!(a.left_center(), a.span_of_units(&[0, 1]));
        }
    }

    #[test]
    fn char_p_example_is_lie() {
        for p in [3, 5] {
            let parts = char_p_parts(p).unwrap();
            assert!(parts.algebra.is_lie());
            assert!(parts.algebra.is_ideal(&parts.m).unwrap());
            assert!(series::is_nilpotent(&parts.algebra, &parts.l_tensor_n).unwrap());
            assert_eq!(
                series::ideal_closure(&parts.algebra, &parts.l_tensor_n, &parts.algebra.full_space()).unwrap(),
                parts.m
            );
        }
    }

    #[test]
    fn cyclic_params() {
        assert!(cyclic(Q, &[]).is_err());
        let c = cyclic(Q, &[2, -1, 1]).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(!c.is_lie());
    }

    #[test]
    fn hemisemidirect_rejects_non_representations() {
        let g = abelian(Q, 2);
        let bad = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]];
        assert!(matches!(hemisemidirect(&g, &bad), Err(Error::InvalidParams(_))));
        // E4 is the hemisemidirect product of span{z, t} acting on span{x, y}.
        let rep = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]];
        let a = hemisemidirect(&g, &rep).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.left_center().dim(), 2);
    }

    #[test]
    fn semidirect_needs_lie_base() {
        let kind = FamilyKind::Semidirect {
            base: Box::new(FamilyKind::Cyclic { alphas: vec![1] }),
            derivation_seed: 1,
        };
        assert!(matches!(family(Q, &kind), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn random_draws_validate_over_several_fields() {
        for (field, seed) in [(Q, 7), (Field::prime(2).unwrap(), 8), (Field::prime(3).unwrap(), 9)] {
            let entries = seeded_corpus(field, 300, seed, 2..=8).unwrap();
            for e in &entries {
                assert_eq!(e.algebra.dim(), e.family.as_ref().unwrap().dim());
                assert!((2..=8).contains(&e.algebra.dim()));
            }
        }
    }

    #[test]
    fn random_draws_are_reproducible_and_varied() {
        let a = seeded_corpus(Q, 50, 3, 2..=8).unwrap();
        let b = seeded_corpus(Q, 50, 3, 2..=8).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.algebra, y.algebra);
        }
        assert!(a.iter().any(|e| !e.algebra.is_lie()));
        assert!(a.iter().any(|e| e.algebra.is_lie() && e.algebra.dim() > 3));
    }
}
