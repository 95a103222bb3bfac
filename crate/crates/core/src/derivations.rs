//! Derivation algebras and the derivation tower of a Lie algebra with
//! trivial left center.

use serde::Serialize;

use crate::algebra::{LeibnizAlgebra, TableBuilder};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::series;

#[derive(Clone, Debug)]
pub struct DerivationAlgebra {
    pub base: LeibnizAlgebra,
    /// Derivations as `n x n` matrices, in the order of the echelon basis of `space`.
    pub basis: Vec<Matrix>,
    /// Row-major flattened derivations inside `F^{n^2}`.
    pub space: Subspace,
    /// Commutator bracket in `basis` coordinates.
    pub as_lie: LeibnizAlgebra,
    /// `{L_x}` in `basis` coordinates.
    pub inner: Subspace,
    /// `x -> coordinates of L_x`, a `dim Der x n` matrix.
    pub inner_map: Matrix,
}

impl DerivationAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a derivation in `basis`.
    pub fn coordinates(&self, d: &Matrix) -> Option<Vector> {
        self.space
            .coordinates(&d.flatten())
            .map(|c| Vector::new(self.base.field(), c).expect("same field"))
    }

    pub fn matrix(&self, coords: &Vector) -> Matrix {
        let n = self.base.dim();
        Matrix::unflatten(&self.space.combine(coords.coords()), n, n)
    }

    pub fn is_complete_at_base(&self) -> bool {
        self.inner.is_full() && self.base.center().is_zero()
    }
}

/// `Der(A)` with its commutator bracket and the inner derivations.
pub fn derivations(a: &LeibnizAlgebra) -> DerivationAlgebra {
    let space = derivation_space(a);
    let n = a.dim();
    let f = a.field();
    let basis: Vec<Matrix> = space.basis().iter().map(|v| Matrix::unflatten(v, n, n)).collect();
    let m = basis.len();

    // The space is in reduced echelon form, so coordinates are the entries at the pivots.
    let pivots = space.pivots().to_vec();
    let coords = |d: &Matrix| -> Vec<_> { pivots.iter().map(|&p| d.entries()[p].clone()).collect() };
    let mut b = TableBuilder::new(f, m);
    for (p, dp) in basis.iter().enumerate() {
        for (q, dq) in basis.iter().enumerate() {
            let c = coords(&dp.commutator(dq));
            b.set_product(p, q, &Vector::new(f, c).expect("same field"));
        }
    }
    let as_lie = b.build(format!("Der({})", a.name())).expect("commutator bracket is Lie");

    let inner_cols: Vec<Vector> = (0..n)
        .map(|i| {
            let l = a.left_op(&a.unit(i)).expect("unit vector");
            Vector::new(f, coords(&l)).expect("same field")
        })
        .collect();
    let inner_map = Matrix::from_columns(f, m, &inner_cols);
    let inner = Subspace::from_vectors(f, m, &inner_cols).expect("inner coordinates fit");
    if a.left_center().is_zero() {
        assert_eq!(inner.dim(), n, "x -> L_x must be injective when Z^l(A) = 0");
    }
    DerivationAlgebra {
        base: a.clone(),
        basis,
        space,
        as_lie,
        inner,
        inner_map,
    }
}

/// Matrices of `Der(A)` as `n x n` matrices on the echelon basis of [`derivation_space`].
pub fn derivation_basis(a: &LeibnizAlgebra) -> Vec<Matrix> {
    let n = a.dim();
    derivation_space(a).basis().iter().map(|v| Matrix::unflatten(v, n, n)).collect()
}

/// Solve the linear system `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` in the `n^2` entries of `D`,
/// flattened row-major.
pub fn derivation_space(a: &LeibnizAlgebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let unknowns = n * n;
    let var = |row: usize, col: usize| row * n + col;
    let mut eqs: Vec<Vec<_>> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let eij = a.basis_product(i, j);
            for k in 0..n {
                let mut row = vec![f.zero(); unknowns];
                for (m, c) in eij.coords().iter().enumerate() {
                    if !c.is_zero() {
                        row[var(k, m)] += c;
                    }
                }
                for t in 0..n {
                    let c = &a.basis_product(t, j)[k];
                    if !c.is_zero() {
                        row[var(t, i)] -= c;
                    }
                    let c = &a.basis_product(i, t)[k];
                    if !c.is_zero() {
                        row[var(t, j)] -= c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    Matrix::from_rows(f, eqs, unknowns)
        .expect("rows have n^2 entries")
        .nullspace()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStage {
    pub dim: usize,
    pub center_dim: usize,
    pub der_dim: usize,
    pub inner_dim: usize,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub omega_dim: usize,
    pub der_omega_dim: usize,
    pub center_omega_dim: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub stages: Vec<TowerStage>,
    pub terminated: bool,
    pub limit_dim: usize,
    pub bound_check: Option<BoundCheck>,
    /// `embeddings[i]` sends stage `i` into stage `i + 1` (inner derivations).
    #[serde(skip)]
    pub embeddings: Vec<Matrix>,
    #[serde(skip)]
    pub limit: Option<LeibnizAlgebra>,
}

/// Iterate `A_0 = A`, `A_{i+1} = Der(A_i)` until a stage is complete
/// (zero center, all derivations inner). Stages `0..=max_stages` are examined.
pub fn tower(a: &LeibnizAlgebra, max_stages: usize) -> Result<TowerReport> {
    if max_stages == 0 {
        return Err(Error::InvalidParams("max_stages must be at least 1".into()));
    }
    let zl = a.left_center();
    if !zl.is_zero() {
        return Err(Error::NonzeroLeftCenter { dim: zl.dim() });
    }
    let mut stages = Vec::new();
    let mut embeddings = Vec::new();
    let mut g = a.clone();
    for stage in 0..=max_stages {
        let center = g.center();
        if !center.is_zero() {
            return Err(Error::CenterAppearedMidTower {
                stage,
                center_dim: center.dim(),
            });
        }
        let der = derivations(&g);
        let complete = der.inner.is_full();
        stages.push(TowerStage {
            dim: g.dim(),
            center_dim: 0,
            der_dim: der.dim(),
            inner_dim: der.inner.dim(),
            complete,
        });
        if complete {
            let limit_dim = g.dim();
            let bound_check = bound_check(a, limit_dim);
            return Ok(TowerReport {
                stages,
                terminated: true,
                limit_dim,
                bound_check,
                embeddings,
                limit: Some(g),
            });
        }
        embeddings.push(der.inner_map.clone());
        g = der.as_lie.with_name(format!("{}_{}", a.name(), stage + 1));
    }
    Err(Error::StageBudgetExceeded { stages: max_stages })
}

fn bound_check(a: &LeibnizAlgebra, limit_dim: usize) -> Option<BoundCheck> {
    let w = series::omega(a, &a.full_space()).ok()?;
    let view = a.restrict(&w).ok()?;
    let der_omega_dim = derivations(&view.algebra).dim();
    let center_omega_dim = view.algebra.center().dim();
    Some(BoundCheck {
        omega_dim: w.dim(),
        der_omega_dim,
        center_omega_dim,
        holds: limit_dim <= der_omega_dim + center_omega_dim,
    })
}
