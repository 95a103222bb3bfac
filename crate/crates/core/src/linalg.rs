//! Dense exact vectors, matrices and canonical subspaces.
//!
//! A [`Subspace`] stores its basis in reduced row echelon form, so two
//! subspaces are equal exactly when their representations are equal and
//! `==` is the subspace-equality predicate.

use std::fmt;
use std::ops::Index;

use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Vector> {
        for c in &coords {
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: c.field().to_string(),
                });
            }
        }
        Ok(Vector { field, coords })
    }

    pub(crate) fn from_raw(field: Field, coords: Vec<Scalar>) -> Vector {
        Vector { field, coords }
    }

    pub fn zeros(field: Field, n: usize) -> Vector {
        Vector {
            field,
            coords: vec![field.zero(); n],
        }
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(field, n);
        v.coords[i] = field.one();
        v
    }

    pub fn from_ints(field: Field, values: &[i64]) -> Vector {
        Vector {
            field,
            coords: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        let mut acc = self.field.zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc.sub_mul_assign(&-a, b);
        }
        acc
    }

    pub(crate) fn check(&self, field: Field, n: usize) -> Result<()> {
        if self.field != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: self.field.to_string(),
            });
        }
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

/// Coordinates as strings.
impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Row-major dense matrix. Acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for c in &r {
                if c.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: c.field().to_string(),
                    });
                }
            }
            data.extend(r);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: Field, nrows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for i in 0..nrows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_raw(self.field, (0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = self.field.zero();
            for (a, b) in self.row(r).iter().zip(v.coords()) {
                if !a.is_zero() && !b.is_zero() {
                    acc.sub_mul_assign(&-a, b);
                }
            }
            out.push(acc);
        }
        Vector::from_raw(self.field, out)
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let neg_a = -a;
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].sub_mul_assign(&neg_a, b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Matrix) -> Scalar {
        assert_eq!((self.rows, self.cols), (other.cols, other.rows));
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, i);
                if !a.is_zero() && !b.is_zero() {
                    acc.sub_mul_assign(&-a, b);
                }
            }
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        self.pow(self.rows as u32).is_zero()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_row_vecs();
        rref(&mut rows, self.cols).len()
    }

    /// Canonical basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut rows = self.to_row_vecs();
        let pivots = rref(&mut rows, self.cols);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            basis.push(v);
        }
        Subspace::from_rows(self.field, self.cols, basis)
    }

    /// Vertical concatenation.
    pub fn stack(field: Field, cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Matrix { field, rows, cols, data }
    }

    /// Row-major flattening into a vector of length rows * cols.
    pub fn flatten(&self) -> Vector {
        Vector::from_raw(self.field, self.data.clone())
    }

    pub fn unflatten(v: &Vector, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            field: v.field(),
            rows,
            cols,
            data: v.coords().to_vec(),
        }
    }
}

/// In-place reduced row echelon form over the first `ncols` columns.
/// Zero rows are dropped; returns the pivot column of each remaining row.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for k in c..ncols {
                rows[r][k] = &rows[r][k] * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for k in c..ncols {
                if !pivot_row[k].is_zero() {
                    row[k].sub_mul_assign(&factor, &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
    field: Field,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace {
            field,
            ambient: n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace {
            field,
            ambient: n,
            rows: (0..n).map(|i| Vector::unit(field, n, i).into_coords()).collect(),
            pivots: (0..n).collect(),
        }
    }

    /// Span of `vs` inside `F^n`.
    pub fn from_vectors(field: Field, n: usize, vs: &[Vector]) -> Result<Subspace> {
        for v in vs {
            v.check(field, n)?;
        }
        Ok(Subspace::from_rows(
            field,
            n,
            vs.iter().map(|v| v.coords().to_vec()).collect(),
        ))
    }

    pub(crate) fn from_rows(field: Field, n: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
        let pivots = rref(&mut rows, n);
        Subspace {
            field,
            ambient: n,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|r| Vector::from_raw(self.field, r.clone()))
            .collect()
    }

    /// Columns that carry no pivot; the unit vectors there span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Residual of `v` after eliminating against the basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.coords().to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                o.sub_mul_assign(&c, r);
            }
        }
        Vector::from_raw(self.field, out)
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        v.check(self.field, self.ambient)?;
        Ok(self.reduce(v).is_zero())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        if !self.reduce(v).is_zero() {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coordinates`].
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            let neg = -c;
            for (o, r) in out.iter_mut().zip(row) {
                o.sub_mul_assign(&neg, r);
            }
        }
        Vector::from_raw(self.field, out)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field == other.field
            && self.ambient == other.ambient
            && self.dim() <= other.dim()
            && self
                .rows
                .iter()
                .all(|r| other.reduce(&Vector::from_raw(self.field, r.clone())).is_zero())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if other.is_zero() || other.is_subspace_of(self) {
            return Ok(self.clone());
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Subspace::from_rows(self.field, self.ambient, rows))
    }

    /// Span of this subspace together with extra vectors.
    pub fn extend(&self, vs: &[Vector]) -> Result<Subspace> {
        for v in vs {
            v.check(self.field, self.ambient)?;
        }
        let extra: Vec<Vector> = vs.iter().filter(|v| !self.reduce(v).is_zero()).cloned().collect();
        if extra.is_empty() {
            return Ok(self.clone());
        }
        let rows = self
            .rows
            .iter()
            .cloned()
            .chain(extra.into_iter().map(Vector::into_coords))
            .collect();
        Ok(Subspace::from_rows(self.field, self.ambient, rows))
    }

    /// Intersection through the kernel of `[U^T | -V^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_subspace_of(other) {
            return Ok(self.clone());
        }
        if other.is_subspace_of(self) {
            return Ok(other.clone());
        }
        let r = self.dim();
        let s = other.dim();
        let mut m = Matrix::zeros(self.field, self.ambient, r + s);
        for (j, row) in self.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, row[i].clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, r + j, -&row[i]);
            }
        }
        let kernel = m.nullspace();
        let vs: Vec<Vec<Scalar>> = kernel
            .rows
            .iter()
            .map(|k| self.combine(&k[..r]).into_coords())
            .collect();
        Ok(Subspace::from_rows(self.field, self.ambient, vs))
    }

    /// Rows `w` with `w . v = 0` for all `v` here; `P v = 0` iff `v` is in the subspace.
    pub fn annihilator(&self) -> Matrix {
        let comp = self.complement_indices();
        let mut m = Matrix::zeros(self.field, comp.len(), self.ambient);
        for (k, &c) in comp.iter().enumerate() {
            m.set(k, c, self.field.one());
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                m.set(k, p, -&row[c]);
            }
        }
        m
    }

    /// Image of the subspace under a linear map (given as a matrix on coordinates).
    pub fn image(&self, map: &Matrix) -> Subspace {
        let rows = self
            .basis()
            .iter()
            .map(|v| map.mul_vec(v).into_coords())
            .collect();
        Subspace::from_rows(self.field, map.rows(), rows)
    }
}

/// Echelon basis rows, coefficients as strings.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Span of a list of vectors, `subspace_from_vectors` in operation form.
pub fn span(field: Field, n: usize, vs: &[Vector]) -> Result<Subspace> {
    Subspace::from_vectors(field, n, vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn v(values: &[i64]) -> Vector {
        Vector::from_ints(Q, values)
    }

    fn sp(vs: &[&[i64]]) -> Subspace {
        let n = vs.first().map_or(0, |r| r.len());
        Subspace::from_vectors(Q, n, &vs.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn span_examples() {
        assert_eq!(sp(&[&[1, 1, 0], &[0, 1, 0]]), sp(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(sp(&[&[1, 1, 0], &[0, 1, 0]]).rows(), Subspace::full(Q, 3).rows()[..2].to_vec());
        let empty = Subspace::from_vectors(Q, 3, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        assert_eq!(sp(&[&[2, 4]]).basis(), vec![v(&[1, 2])]);
    }

    #[test]
    fn span_rejects_bad_input() {
        assert!(matches!(
            Subspace::from_vectors(Q, 3, &[v(&[1, 2])]),
            Err(Error::DimensionMismatch { .. })
        ));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            Subspace::from_vectors(Q, 2, &[Vector::from_ints(f5, &[1, 2])]),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn sum_examples() {
        let u = sp(&[&[1, 2, 3]]);
        assert_eq!(u.sum(&Subspace::zero(Q, 3)).unwrap(), u);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(sp(&[&[1, 0, 0]]).sum(&sp(&[&[0, 1, 0]])).unwrap().dim(), 2);
        assert!(u.sum(&Subspace::zero(Q, 2)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let u = sp(&[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(sp(&[&[1, 0, 0]]).intersect(&sp(&[&[0, 1, 0]])).unwrap().is_zero());
        let a = sp(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), sp(&[&[0, 1, 0]]));
    }

    #[test]
    fn contains_examples() {
        let u = sp(&[&[1, 1]]);
        assert!(u.contains(&v(&[0, 0])).unwrap());
        assert!(!u.contains(&v(&[1, 0])).unwrap());
        assert!(u.contains(&v(&[3, 3])).unwrap());
        for b in u.basis() {
            assert!(u.contains(&b).unwrap());
        }
        assert!(u.contains(&v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(Q, 3).nullspace().is_zero());
        assert_eq!(Matrix::zeros(Q, 3, 3).nullspace(), Subspace::full(Q, 3));
        let m = Matrix::from_ints(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.nullspace();
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(m.mul_vec(&b).is_zero());
        }
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let u = sp(&[&[1, 2, 0, 1], &[0, 0, 1, 5]]);
        let p = u.annihilator();
        assert_eq!(p.nullspace(), u);
    }

    // Rank by an independent route: fraction-free elimination on the transpose.
    fn column_rank_oracle(m: &Matrix) -> usize {
        let t = m.transpose();
        let mut rows: Vec<Vec<Scalar>> = t.to_row_vecs();
        let ncols = t.cols();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            for i in rank + 1..rows.len() {
                let a = rows[rank][c].clone();
                let b = rows[i][c].clone();
                for k in 0..ncols {
                    rows[i][k] = &(&rows[i][k] * &a) - &(&rows[rank][k] * &b);
                }
            }
            rank += 1;
        }
        rank
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |vals| {
            let rs: Vec<&[i64]> = vals.chunks(cols).collect();
            Matrix::from_ints(Q, &rs)
        })
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        (0..=n).prop_flat_map(move |k| arb_matrix(k.max(1), n)).prop_map(move |m| {
            Subspace::from_vectors(Q, n, &(0..m.rows()).map(|r| Vector::from_raw(Q, m.row(r).to_vec())).collect::<Vec<_>>())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
            prop_assert_eq!(column_rank_oracle(&m) + m.nullspace().dim(), m.cols());
            prop_assert_eq!(m.rank(), column_rank_oracle(&m));
        }

        #[test]
        fn intersection_dimension_formula(u in arb_subspace(4), w in arb_subspace(4)) {
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), u.dim() + w.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        }

        #[test]
        fn canonical_under_permutation_and_scaling(
            m in arb_matrix(3, 4),
            perm in Just(vec![2usize, 0, 1]).prop_shuffle(),
            scales in proptest::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 3),
        ) {
            let vs: Vec<Vector> = (0..3).map(|r| Vector::from_raw(Q, m.row(r).to_vec())).collect();
            let shuffled: Vec<Vector> = perm
                .iter()
                .zip(&scales)
                .map(|(&i, &s)| vs[i].scale(&Q.from_i64(s)))
                .collect();
            prop_assert_eq!(span(Q, 4, &vs).unwrap(), span(Q, 4, &shuffled).unwrap());
        }

        #[test]
        fn modular_law(u0 in arb_subspace(4), v in arb_subspace(4), w in arb_subspace(4)) {
            // Force U inside W.
            let u = u0.intersect(&w).unwrap();
            let lhs = u.sum(&v.intersect(&w).unwrap()).unwrap();
            let rhs = u.sum(&v).unwrap().intersect(&w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
