//! Radical and nilradical in characteristic 0, Cartan subalgebra search, and
//! the structural checks that depend on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::series;

fn require_char_zero(a: &LeibnizAlgebra) -> Result<()> {
    if a.field().is_char_zero() {
        Ok(())
    } else {
        Err(Error::UnsupportedCharacteristic(a.field().to_string()))
    }
}

/// Maximal solvable ideal: the Killing-orthogonal of the derived algebra of
/// the Lie quotient `A/Leib(A)`, pulled back to `A`.
pub fn radical(a: &LeibnizAlgebra) -> Result<Subspace> {
    require_char_zero(a)?;
    let q = a.quotient(&a.leib_ideal()?)?;
    let g = &q.algebra;
    let m = g.dim();
    let ops: Vec<Matrix> = (0..m).map(|i| g.left_op(&g.unit(i)).expect("unit")).collect();
    let mut gram = Matrix::zeros(a.field(), m, m);
    for i in 0..m {
        for j in i..m {
            let t = ops[i].trace_product(&ops[j]);
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    let derived = g.product(&g.full_space(), &g.full_space())?;
    let rows: Vec<Vec<_>> = derived
        .basis()
        .iter()
        .map(|y| gram.mul_vec(y).into_coords())
        .collect();
    let rad_q = if rows.is_empty() {
        g.full_space()
    } else {
        Matrix::from_rows(a.field(), rows, m)?.nullspace()
    };
    let r = q.preimage(&rad_q);
    if !a.is_ideal(&r)? {
        return Err(Error::VerificationFailed(format!("radical candidate {r} is not an ideal")));
    }
    if !series::is_solvable(a, &r)? {
        return Err(Error::VerificationFailed(format!("radical candidate {r} is not solvable")));
    }
    Ok(r)
}

/// Associative algebra spanned by all nonempty products of the generators.
#[derive(Clone, Debug)]
pub struct AssociativeEnvelope {
    pub generators: Vec<Matrix>,
    /// Flattened `n x n` matrices.
    pub span: Subspace,
    n: usize,
}

impl AssociativeEnvelope {
    pub fn generate(field: crate::scalar::Field, n: usize, generators: Vec<Matrix>) -> AssociativeEnvelope {
        let mut span = Subspace::zero(field, n * n);
        let mut queue = Vec::new();
        for g in &generators {
            let flat = g.flatten();
            if !span.contains(&flat).expect("n x n") {
                span = span.extend(&[flat]).expect("n x n");
                queue.push(g.clone());
            }
        }
        while let Some(w) = queue.pop() {
            for g in &generators {
                let prod = g.matmul(&w);
                let flat = prod.flatten();
                if !span.contains(&flat).expect("n x n") {
                    span = span.extend(&[flat]).expect("n x n");
                    queue.push(prod);
                }
            }
        }
        AssociativeEnvelope { generators, span, n }
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.span
            .basis()
            .iter()
            .map(|v| Matrix::unflatten(v, self.n, self.n))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span.contains(&m.flatten()).unwrap_or(false)
    }

    /// Products of basis elements stay in the span.
    pub fn is_closed(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| b.iter().all(|y| self.contains(&x.matmul(y))))
    }

    /// `{w in W : tr(wv) = 0 for all v in W}`, as flattened matrices.
    pub fn trace_radical(&self) -> Subspace {
        let b = self.basis();
        let k = b.len();
        let field = self.span.field();
        if k == 0 {
            return self.span.clone();
        }
        let rows: Vec<Vec<_>> = (0..k)
            .map(|j| (0..k).map(|i| b[i].trace_product(&b[j])).collect())
            .collect();
        let coeffs = Matrix::from_rows(field, rows, k).expect("square").nullspace();
        let vs: Vec<Vector> = coeffs
            .basis()
            .iter()
            .map(|c| self.span.combine(c.coords()))
            .collect();
        Subspace::from_vectors(field, self.n * self.n, &vs).expect("flattened matrices")
    }
}

/// `{r in R : every listed operator of r lies in rad}`, with `ops(x)` linear in `x`.
fn elements_with_ops_in(
    a: &LeibnizAlgebra,
    r: &Subspace,
    rad: &Subspace,
    ops: &[fn(&LeibnizAlgebra, &Vector) -> Matrix],
) -> Subspace {
    let n = a.dim();
    let rb = r.basis();
    if rb.is_empty() {
        return r.clone();
    }
    let ann = rad.annihilator();
    let mut blocks = Vec::new();
    for op in ops {
        let cols: Vec<Vector> = rb.iter().map(|x| ann.mul_vec(&op(a, x).flatten())).collect();
        blocks.push(Matrix::from_columns(a.field(), ann.rows(), &cols));
    }
    let coeffs = Matrix::stack(a.field(), rb.len(), &blocks).nullspace();
    let vs: Vec<Vector> = coeffs.basis().iter().map(|c| r.combine(c.coords())).collect();
    Subspace::from_vectors(a.field(), n, &vs).expect("vectors of A")
}

fn left(a: &LeibnizAlgebra, x: &Vector) -> Matrix {
    a.left_op(x).expect("vector of A")
}

fn right(a: &LeibnizAlgebra, x: &Vector) -> Matrix {
    a.right_op(x).expect("vector of A")
}

/// Maximal nilpotent ideal. With `R` the radical, `W` the associative
/// envelope of `{L_x, R_x : x in R}` and `rad W` its trace-form radical,
/// `N = (AR + RA) + {x in R : L_x, R_x in rad W}`. The result is checked to be
/// a nilpotent ideal containing `AR + RA`, and no basis vector of `R` outside
/// `N` may generate, together with `N`, a nilpotent ideal.
pub fn nilradical(a: &LeibnizAlgebra) -> Result<Subspace> {
    let r = radical(a)?;
    nilradical_from_radical(a, &r)
}

fn nilradical_from_radical(a: &LeibnizAlgebra, r: &Subspace) -> Result<Subspace> {
    let n = a.dim();
    let k = a.two_sided_product(&a.full_space(), r)?;
    let mut gens = Vec::new();
    for x in r.basis() {
        gens.push(a.left_op(&x)?);
        gens.push(a.right_op(&x)?);
    }
    let env = AssociativeEnvelope::generate(a.field(), n, gens);
    let rad_w = env.trace_radical();
    let inner = elements_with_ops_in(a, r, &rad_w, &[left, right]);
    let nil = k.sum(&inner)?;
    if !a.is_ideal(&nil)? {
        return Err(Error::VerificationFailed(format!("nilradical candidate {nil} is not an ideal")));
    }
    if !series::is_nilpotent(a, &nil)? {
        return Err(Error::VerificationFailed(format!("nilradical candidate {nil} is not nilpotent")));
    }
    for v in r.basis() {
        if nil.contains(&v)? {
            continue;
        }
        let bigger = series::ideal_closure(a, &nil.extend(&[v])?, &a.full_space())?;
        if series::is_nilpotent(a, &bigger)? {
            return Err(Error::MaximalityInconclusive(format!(
                "{nil} is properly contained in the nilpotent ideal {bigger}"
            )));
        }
    }
    Ok(nil)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanResult {
    pub subalgebra: Subspace,
    /// `x` whose Fitting null component `ker L_x^n` is the subalgebra.
    pub element: Vector,
    pub trials: usize,
}

/// Fitting null component of `L_x`.
pub fn fitting_null(a: &LeibnizAlgebra, x: &Vector) -> Result<Subspace> {
    Ok(a.left_op(x)?.pow(a.dim() as u32).nullspace())
}

pub fn is_cartan(a: &LeibnizAlgebra, h: &Subspace) -> Result<bool> {
    Ok(a.is_subalgebra(h)? && series::is_nilpotent(a, h)? && &a.normalizer(h)? == h)
}

/// Try basis vectors, then seeded combinations with coefficients in `-3..=3`,
/// accepting the first Fitting null component that is a Cartan subalgebra.
pub fn cartan(a: &LeibnizAlgebra, attempt_budget: usize, seed: u64) -> Result<CartanResult> {
    if attempt_budget == 0 {
        return Err(Error::InvalidParams("attempt budget must be at least 1".into()));
    }
    let n = a.dim();
    if n == 0 {
        return Ok(CartanResult {
            subalgebra: a.zero_space(),
            element: a.zero_vector(),
            trials: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..attempt_budget {
        let x = if trial < n {
            a.unit(trial)
        } else {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            Vector::from_ints(a.field(), &coeffs)
        };
        let h = fitting_null(a, &x)?;
        if is_cartan(a, &h)? {
            return Ok(CartanResult {
                subalgebra: h,
                element: x,
                trials: trial + 1,
            });
        }
    }
    Err(Error::CartanSearchExhausted { trials: attempt_budget })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypothesis not met on this instance.
    Vacuous,
    /// Not applicable over this field.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl TheoremCheck {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> TheoremCheck {
        TheoremCheck {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    pub fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> TheoremCheck {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        TheoremCheck::new(name, status, detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub radical: Option<Subspace>,
    pub nilradical: Option<Subspace>,
    pub cartan: Option<Subspace>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// `rad(A) = 0`; known only in characteristic 0.
    pub semisimple: Option<bool>,
    pub checks: Vec<TheoremCheck>,
    pub notes: Vec<String>,
}

impl StructureReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// Radical, nilradical and Cartan subalgebra with the identities tying them
/// together: `AR + RA ⊆ N`; `A²` nilpotent when `A` is solvable;
/// `A² ∩ R = AR + RA`; `N = nilrad(R)`; and `A = A^ω + H` for any field.
pub fn check_structure_theorems(a: &LeibnizAlgebra, cartan_budget: usize, seed: u64) -> Result<StructureReport> {
    let full = a.full_space();
    let solvable = series::is_solvable(a, &full)?;
    let nilpotent = series::is_nilpotent(a, &full)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    let cartan = match cartan(a, cartan_budget, seed) {
        Ok(c) => {
            let omega = series::omega(a, &full)?;
            let total = omega.sum(&c.subalgebra)?;
            checks.push(TheoremCheck::from_bool(
                "cartan_decomposition",
                total.is_full(),
                format!("A^ω + H = {total}"),
            ));
            Some(c.subalgebra)
        }
        Err(Error::CartanSearchExhausted { trials }) => {
            notes.push(format!("Cartan search exhausted after {trials} trials"));
            checks.push(TheoremCheck::new("cartan_decomposition", CheckStatus::Vacuous, "no Cartan subalgebra found"));
            None
        }
        Err(e) => return Err(e),
    };

    if !a.field().is_char_zero() {
        for name in ["radical_products", "solvable_square_nilpotent", "square_meets_radical", "nilradical_of_radical"] {
            checks.push(TheoremCheck::new(name, CheckStatus::Skipped, "characteristic p"));
        }
        return Ok(StructureReport {
            radical: None,
            nilradical: None,
            cartan,
            solvable,
            nilpotent,
            semisimple: None,
            checks,
            notes,
        });
    }

    let r = radical(a)?;
    let nil = nilradical_from_radical(a, &r)?;
    let ar = a.two_sided_product(&full, &r)?;
    checks.push(TheoremCheck::from_bool(
        "radical_products",
        ar.is_subspace_of(&nil),
        format!("AR + RA = {ar}, N = {nil}"),
    ));
    let square = a.product(&full, &full)?;
    if solvable {
        checks.push(TheoremCheck::from_bool(
            "solvable_square_nilpotent",
            series::is_nilpotent(a, &square)?,
            format!("A² = {square}"),
        ));
    } else {
        checks.push(TheoremCheck::new("solvable_square_nilpotent", CheckStatus::Vacuous, "A is not solvable"));
    }
    let meet = square.intersect(&r)?;
    checks.push(TheoremCheck::from_bool(
        "square_meets_radical",
        meet == ar,
        format!("A² ∩ R = {meet}, AR + RA = {ar}"),
    ));
    let view = a.restrict(&r)?;
    let nil_r = view.embed_subspace(&nilradical(&view.algebra)?);
    checks.push(TheoremCheck::from_bool(
        "nilradical_of_radical",
        nil_r == nil,
        format!("nilrad(R) = {nil_r}, N = {nil}"),
    ));
    Ok(StructureReport {
        semisimple: Some(r.is_zero()),
        radical: Some(r),
        nilradical: Some(nil),
        cartan,
        solvable,
        nilpotent,
        checks,
        notes,
    })
}
