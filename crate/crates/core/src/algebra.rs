//! Leibniz algebras given by structure constants.
//!
//! Basis products are stored densely: `e_i e_j = table[i * n + j]`. Every
//! constructor funnels through [`LeibnizAlgebra::validate`], which checks
//! the left Leibniz identity `x(yz) = (xy)z + y(xz)` on all basis triples.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::{Field, Scalar};

/// Largest dimension for which Leib(A) over F_2 is computed by enumerating squares.
pub const CHAR_TWO_SQUARE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    name: String,
    field: Field,
    dim: usize,
    table: Vec<Vector>,
}

/// Which side of the product must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `{x : xB = 0}`
    Left,
    /// `{x : Bx = 0}`
    Right,
    Both,
}

/// Incremental builder for a structure table. Indices are 0-based.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    field: Field,
    dim: usize,
    table: Vec<Vec<Scalar>>,
}

impl TableBuilder {
    pub fn new(field: Field, dim: usize) -> TableBuilder {
        TableBuilder {
            field,
            dim,
            table: vec![vec![field.zero(); dim]; dim * dim],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Add `coeff * e_k` to `e_i e_j`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, coeff: Scalar) -> Result<&mut Self> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    dim: self.dim,
                });
            }
        }
        if coeff.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: coeff.field().to_string(),
            });
        }
        let slot = &mut self.table[i * self.dim + j][k];
        *slot += &coeff;
        Ok(self)
    }

    pub fn add_int(&mut self, i: usize, j: usize, k: usize, coeff: i64) -> &mut Self {
        let c = self.field.from_i64(coeff);
        self.add(i, j, k, c).expect("index in range")
    }

    /// Set `e_i e_j` to a whole vector.
    pub fn set_product(&mut self, i: usize, j: usize, v: &Vector) -> &mut Self {
        assert_eq!(v.len(), self.dim);
        self.table[i * self.dim + j] = v.coords().to_vec();
        self
    }

    pub fn build(&self, name: impl Into<String>) -> Result<LeibnizAlgebra> {
        let products = self
            .table
            .iter()
            .map(|r| Vector::from_raw(self.field, r.clone()))
            .collect();
        LeibnizAlgebra::validate(name, self.field, self.dim, products)
    }
}

impl LeibnizAlgebra {
    /// Check the left Leibniz identity on every basis triple and build the algebra.
    /// `products[i * dim + j]` is `e_i e_j`.
    pub fn validate(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        products: Vec<Vector>,
    ) -> Result<LeibnizAlgebra> {
        if products.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: products.len(),
            });
        }
        for p in &products {
            p.check(field, dim)?;
        }
        let alg = LeibnizAlgebra {
            name: name.into(),
            field,
            dim,
            table: products,
        };
        alg.first_identity_violation().map_or(Ok(alg), Err)
    }

    fn first_identity_violation(&self) -> Option<Error> {
        let n = self.dim;
        for i in 0..n {
            let left_i = self.left_op_basis(i);
            for j in 0..n {
                let eij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = left_i.mul_vec(self.basis_product(j, k));
                    let rhs = self
                        .mul_unit_left_vec(eij, k)
                        .add(&self.mul_basis_left(j, self.basis_product(i, k)));
                    if lhs != rhs {
                        return Some(Error::LeibnizIdentityViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LeibnizAlgebra {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_i e_j` (0-based).
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn unit(&self, i: usize) -> Vector {
        Vector::unit(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zeros(self.field, self.dim)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span(&self, vs: &[Vector]) -> Result<Subspace> {
        Subspace::from_vectors(self.field, self.dim, vs)
    }

    /// Span of the listed basis vectors (0-based).
    pub fn span_of_units(&self, idx: &[usize]) -> Subspace {
        let vs: Vec<Vector> = idx.iter().map(|&i| self.unit(i)).collect();
        self.span(&vs).expect("unit vectors are well-formed")
    }

    pub fn is_lie(&self) -> bool {
        self.leib_ideal().map(|l| l.is_zero()).unwrap_or(false)
    }

    pub(crate) fn check_vector(&self, v: &Vector) -> Result<()> {
        v.check(self.field, self.dim)
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: s.field().to_string(),
            });
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Bilinear product by tensor contraction.
    pub fn mul(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = -(xi * yj);
                for (o, t) in out.iter_mut().zip(self.table[i * n + j].coords()) {
                    if !t.is_zero() {
                        o.sub_mul_assign(&c, t);
                    }
                }
            }
        }
        Vector::from_raw(self.field, out)
    }

    // (v) e_k for an arbitrary vector v.
    fn mul_unit_left_vec(&self, v: &Vector, k: usize) -> Vector {
        self.mul_unchecked(v, &self.unit(k))
    }

    // e_j v for an arbitrary vector v.
    fn mul_basis_left(&self, j: usize, v: &Vector) -> Vector {
        self.mul_unchecked(&self.unit(j), v)
    }

    fn left_op_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.basis_product(i, j).clone()).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `L_x : y -> xy`.
    pub fn left_op(&self, x: &Vector) -> Result<Matrix> {
        self.check_vector(x)?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_unchecked(x, &self.unit(j))).collect();
        Ok(Matrix::from_columns(self.field, self.dim, &cols))
    }

    /// Matrix of `R_x : y -> yx`.
    pub fn right_op(&self, x: &Vector) -> Result<Matrix> {
        self.check_vector(x)?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_unchecked(&self.unit(j), x)).collect();
        Ok(Matrix::from_columns(self.field, self.dim, &cols))
    }

    /// `span{uv : u in U, v in V}` from basis products.
    pub fn product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut acc = self.zero_space();
        let vb = v.basis();
        for a in u.basis() {
            let prods: Vec<Vector> = vb.iter().map(|b| self.mul_unchecked(&a, b)).collect();
            acc = acc.extend(&prods)?;
            if acc.is_full() {
                break;
            }
        }
        Ok(acc)
    }

    /// `UV + VU`.
    pub fn two_sided_product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.product(u, v)?.sum(&self.product(v, u)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        Ok(self.product(s, s)?.is_subspace_of(s))
    }

    /// `ambient * s + s * ambient ⊆ s`.
    pub fn is_ideal_of(&self, s: &Subspace, ambient: &Subspace) -> Result<bool> {
        Ok(self.product(ambient, s)?.is_subspace_of(s) && self.product(s, ambient)?.is_subspace_of(s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.is_ideal_of(s, &self.full_space())
    }

    /// `Leib(A) = span{x^2}`; polarized in characteristic other than 2,
    /// enumerated squares over F_2.
    pub fn leib_ideal(&self) -> Result<Subspace> {
        let n = self.dim;
        if self.field.characteristic() == 2 {
            if n > CHAR_TWO_SQUARE_CAP {
                return Err(Error::CharTwoDimTooLarge {
                    dim: n,
                    cap: CHAR_TWO_SQUARE_CAP,
                });
            }
            let mut acc = self.zero_space();
            for mask in 1u64..(1u64 << n) {
                let x = Vector::from_raw(
                    self.field,
                    (0..n).map(|i| self.field.from_u64((mask >> i) & 1)).collect(),
                );
                acc = acc.extend(&[self.mul_unchecked(&x, &x)])?;
                if acc.is_full() {
                    break;
                }
            }
            return Ok(acc);
        }
        let mut vs = Vec::new();
        for i in 0..n {
            vs.push(self.basis_product(i, i).clone());
            for j in i + 1..n {
                vs.push(self.basis_product(i, j).add(self.basis_product(j, i)));
            }
        }
        self.span(&vs)
    }

    pub fn centralizer(&self, b: &Subspace, side: Side) -> Result<Subspace> {
        self.check_subspace(b)?;
        if b.is_zero() {
            return Ok(self.full_space());
        }
        let mut blocks = Vec::new();
        for v in b.basis() {
            if matches!(side, Side::Left | Side::Both) {
                blocks.push(self.right_op(&v)?);
            }
            if matches!(side, Side::Right | Side::Both) {
                blocks.push(self.left_op(&v)?);
            }
        }
        Ok(Matrix::stack(self.field, self.dim, &blocks).nullspace())
    }

    pub fn left_center(&self) -> Subspace {
        self.centralizer(&self.full_space(), Side::Left).expect("full space is compatible")
    }

    pub fn right_center(&self) -> Subspace {
        self.centralizer(&self.full_space(), Side::Right).expect("full space is compatible")
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full_space(), Side::Both).expect("full space is compatible")
    }

    /// `{x : xH ⊆ H and Hx ⊆ H}`.
    pub fn normalizer(&self, h: &Subspace) -> Result<Subspace> {
        self.check_subspace(h)?;
        if h.is_full() || h.is_zero() {
            return Ok(self.full_space());
        }
        let p = h.annihilator();
        let mut blocks = Vec::new();
        for v in h.basis() {
            blocks.push(p.matmul(&self.right_op(&v)?));
            blocks.push(p.matmul(&self.left_op(&v)?));
        }
        Ok(Matrix::stack(self.field, self.dim, &blocks).nullspace())
    }

    /// `D(xy) = D(x)y + xD(y)` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        if d.rows() != self.dim || d.cols() != self.dim || d.field() != self.field {
            return false;
        }
        let images: Vec<Vector> = (0..self.dim).map(|i| d.column(i)).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = d.mul_vec(self.basis_product(i, j));
                let rhs = self
                    .mul_unchecked(&images[i], &self.unit(j))
                    .add(&self.mul_unchecked(&self.unit(i), &images[j]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The quotient by a two-sided ideal, on the non-pivot coordinates of `ideal`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let section = ideal.complement_indices();
        let m = section.len();
        let project = |v: &Vector| -> Vector {
            let r = ideal.reduce(v);
            Vector::from_raw(self.field, section.iter().map(|&c| r[c].clone()).collect())
        };
        let cols: Vec<Vector> = (0..self.dim).map(|j| project(&self.unit(j))).collect();
        let projection = Matrix::from_columns(self.field, m, &cols);
        let mut products = Vec::with_capacity(m * m);
        for &a in &section {
            for &b in &section {
                products.push(project(self.basis_product(a, b)));
            }
        }
        let algebra = LeibnizAlgebra::validate(format!("{}/I", self.name), self.field, m, products)?;
        Ok(Quotient {
            algebra,
            projection,
            section,
            ideal: ideal.clone(),
        })
    }

    /// A subalgebra as an algebra in its own right, on its echelon basis.
    pub fn restrict(&self, carrier: &Subspace) -> Result<SubalgebraView> {
        self.check_subspace(carrier)?;
        if !self.is_subalgebra(carrier)? {
            return Err(Error::NotASubalgebra);
        }
        let basis = carrier.basis();
        let r = basis.len();
        let mut products = Vec::with_capacity(r * r);
        for a in &basis {
            for b in &basis {
                let p = self.mul_unchecked(a, b);
                let coords = carrier.coordinates(&p).ok_or(Error::NotASubalgebra)?;
                products.push(Vector::from_raw(self.field, coords));
            }
        }
        let algebra = LeibnizAlgebra::validate(format!("{}|sub", self.name), self.field, r, products)?;
        Ok(SubalgebraView {
            algebra,
            carrier: carrier.clone(),
        })
    }

    /// `A ⊕ span{d}` with `d x = D x`, `x d = -D x`, `d d = 0`.
    pub fn semidirect_by_derivation(&self, d: &Matrix) -> Result<LeibnizAlgebra> {
        if !self.is_derivation(d) {
            return Err(Error::NotADerivation);
        }
        let n = self.dim;
        let mut b = TableBuilder::new(self.field, n + 1);
        let lift = |v: &Vector| {
            let mut c = v.coords().to_vec();
            c.push(self.field.zero());
            Vector::from_raw(self.field, c)
        };
        for i in 0..n {
            for j in 0..n {
                b.set_product(i, j, &lift(self.basis_product(i, j)));
            }
            let di = lift(&d.column(i));
            b.set_product(n, i, &di);
            b.set_product(i, n, &di.scale(&self.field.from_i64(-1)));
        }
        b.build(format!("{}⋊D", self.name))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        let (n, m) = (self.dim, other.dim);
        let mut b = TableBuilder::new(self.field, n + m);
        for i in 0..n {
            for j in 0..n {
                let mut c = self.basis_product(i, j).coords().to_vec();
                c.extend(std::iter::repeat_n(self.field.zero(), m));
                b.set_product(i, j, &Vector::from_raw(self.field, c));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut c = vec![self.field.zero(); n];
                c.extend(other.basis_product(i, j).coords().iter().cloned());
                b.set_product(n + i, n + j, &Vector::from_raw(self.field, c));
            }
        }
        b.build(format!("{}⊕{}", self.name, other.name))
    }

    /// Same structure constants read in F_p.
    pub fn reduce_mod(&self, p: u64) -> Result<LeibnizAlgebra> {
        let target = Field::prime(p)?;
        if self.field != Field::Rationals {
            return Err(Error::UnsupportedField(self.field.to_string()));
        }
        let products = self
            .table
            .iter()
            .map(|v| {
                let coords = v
                    .coords()
                    .iter()
                    .map(|c| target.from_rational(c.as_rational().expect("rational entry")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Vector::from_raw(target, coords))
            })
            .collect::<Result<Vec<_>>>()?;
        LeibnizAlgebra::validate(format!("{} mod {p}", self.name), target, self.dim, products)
    }

    /// True when every structure constant is an integer.
    pub fn has_integer_constants(&self) -> bool {
        self.table
            .iter()
            .all(|v| v.coords().iter().all(|c| c.to_integer().is_some()))
    }
}

/// Result of [`LeibnizAlgebra::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LeibnizAlgebra,
    /// `dim(A/I) x dim(A)` matrix of the canonical projection.
    pub projection: Matrix,
    /// Coordinates of `A` whose unit vectors map to the quotient basis.
    pub section: Vec<usize>,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &Vector) -> Vector {
        self.projection.mul_vec(v)
    }

    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        s.image(&self.projection)
    }

    /// Full preimage `π^{-1}(s)`.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let n = self.projection.cols();
        let field = self.algebra.field();
        let lifts: Vec<Vector> = s
            .basis()
            .iter()
            .map(|v| {
                let mut c = vec![field.zero(); n];
                for (k, &idx) in self.section.iter().enumerate() {
                    c[idx] = v[k].clone();
                }
                Vector::from_raw(field, c)
            })
            .collect();
        self.ideal.extend(&lifts).expect("lifts live in the parent space")
    }
}

/// A subalgebra together with its induced structure constants.
#[derive(Clone, Debug)]
pub struct SubalgebraView {
    pub algebra: LeibnizAlgebra,
    pub carrier: Subspace,
}

impl SubalgebraView {
    /// Parent vector from view coordinates.
    pub fn embed(&self, v: &Vector) -> Vector {
        self.carrier.combine(v.coords())
    }

    /// View coordinates of a parent vector lying in the carrier.
    pub fn restrict_vector(&self, v: &Vector) -> Option<Vector> {
        self.carrier
            .coordinates(v)
            .map(|c| Vector::from_raw(self.carrier.field(), c))
    }

    pub fn embed_subspace(&self, s: &Subspace) -> Subspace {
        let vs: Vec<Vector> = s.basis().iter().map(|v| self.embed(v)).collect();
        Subspace::from_vectors(self.carrier.field(), self.carrier.ambient_dim(), &vs).expect("embedded vectors fit")
    }

    /// Parent subspace contained in the carrier, in view coordinates.
    pub fn restrict_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let vs = s
            .basis()
            .iter()
            .map(|v| self.restrict_vector(v).ok_or(Error::NotInsideAmbient))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_vectors(self.carrier.field(), self.carrier.dim(), &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const Q: Field = Field::Rationals;

    fn e4() -> LeibnizAlgebra {
        corpus::example_e4(Q)
    }

    fn v(values: &[i64]) -> Vector {
        Vector::from_ints(Q, values)
    }

    #[test]
    fn e4_products() {
        let a = e4();
        // t x = x
        assert_eq!(a.mul(&v(&[0, 0, 0, 1]), &v(&[1, 0, 0, 0])).unwrap(), v(&[1, 0, 0, 0]));
        assert!(a.mul(&v(&[1, 2, 3, 4]), &a.zero_vector()).unwrap().is_zero());
        // (z + t) y = x + y
        assert_eq!(a.mul(&v(&[0, 0, 1, 1]), &v(&[0, 1, 0, 0])).unwrap(), v(&[1, 1, 0, 0]));
        assert!(a.mul(&v(&[1, 0]), &v(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn abelian_is_valid() {
        assert!(TableBuilder::new(Q, 3).build("ab").is_ok());
    }

    // Evaluate the n^3 identity equations straight from nested arrays.
    fn identity_holds_brute_force(c: &[[[i64; 3]; 3]; 3]) -> bool {
        let mul = |x: [i64; 3], y: [i64; 3]| {
            let mut out = [0i64; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        out[k] += x[i] * y[j] * c[i][j][k];
                    }
                }
            }
            out
        };
        let e = |i: usize| {
            let mut u = [0i64; 3];
            u[i] = 1;
            u
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let lhs = mul(e(i), mul(e(j), e(k)));
                    let r1 = mul(mul(e(i), e(j)), e(k));
                    let r2 = mul(e(j), mul(e(i), e(k)));
                    if (0..3).any(|t| lhs[t] != r1[t] + r2[t]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn symmetric_product_table_matches_brute_force() {
        let mut c = [[[0i64; 3]; 3]; 3];
        c[0][1][2] = 1;
        c[1][0][2] = 1;
        let expected = identity_holds_brute_force(&c);
        let mut b = TableBuilder::new(Q, 3);
        b.add_int(0, 1, 2, 1).add_int(1, 0, 2, 1);
        assert_eq!(b.build("sym").is_ok(), expected);

        // A table that breaks the identity: e1 e1 = e1, e1 e2 = e1.
        let mut bad = [[[0i64; 3]; 3]; 3];
        bad[0][0][0] = 1;
        bad[0][1][0] = 1;
        let mut b = TableBuilder::new(Q, 3);
        b.add_int(0, 0, 0, 1).add_int(0, 1, 0, 1);
        assert!(!identity_holds_brute_force(&bad));
        assert!(matches!(b.build("bad"), Err(Error::LeibnizIdentityViolation { .. })));
    }

    #[test]
    fn violation_reports_first_triple() {
        // e1 e1 = e1: e1(e1 e1) = e1 but (e1 e1) e1 + e1 (e1 e1) = 2 e1.
        let mut b = TableBuilder::new(Q, 1);
        b.add_int(0, 0, 0, 1);
        match b.build("idem") {
            Err(Error::LeibnizIdentityViolation { i, j, k, lhs, rhs }) => {
                assert_eq!((i, j, k), (1, 1, 1));
                assert_eq!(lhs, "(1)");
                assert_eq!(rhs, "(2)");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn left_op_of_t() {
        let a = e4();
        let lt = a.left_op(&a.unit(3)).unwrap();
        let expected = Matrix::from_ints(Q, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(lt, expected);
        assert!(a.left_op(&a.zero_vector()).unwrap().is_zero());
    }

    #[test]
    fn left_ops_form_commutator_representation() {
        for a in [e4(), corpus::sl2(Q), corpus::heisenberg(Q), corpus::example_char_p(3).unwrap()] {
            let n = a.dim();
            let f = a.field();
            let x = Vector::from_ints(f, &(0..n as i64).map(|i| (i * 7 + 3) % 5 - 2).collect::<Vec<_>>());
            let y = Vector::from_ints(f, &(0..n as i64).map(|i| (i * 3 + 1) % 4 - 1).collect::<Vec<_>>());
            let lxy = a.left_op(&a.mul(&x, &y).unwrap()).unwrap();
            let comm = a.left_op(&x).unwrap().commutator(&a.left_op(&y).unwrap());
            assert_eq!(lxy, comm, "{}", a.name());
            assert!(a.is_derivation(&a.left_op(&x).unwrap()));
        }
    }

    #[test]
    fn leib_examples() {
        let a = e4();
        assert_eq!(a.leib_ideal().unwrap(), a.span_of_units(&[0, 1]));
        assert!(corpus::sl2(Q).leib_ideal().unwrap().is_zero());
        assert!(corpus::abelian(Q, 3).leib_ideal().unwrap().is_zero());
    }

    #[test]
    fn leib_over_f2_agrees_with_polarization() {
        let f2 = Field::prime(2).unwrap();
        for a in [corpus::example_e4(f2), corpus::cyclic(f2, &[1, 0]).unwrap(), corpus::heisenberg(f2)] {
            let enumerated = a.leib_ideal().unwrap();
            let mut vs = Vec::new();
            for i in 0..a.dim() {
                vs.push(a.basis_product(i, i).clone());
                for j in 0..a.dim() {
                    vs.push(a.basis_product(i, j).add(a.basis_product(j, i)));
                }
            }
            assert_eq!(enumerated, a.span(&vs).unwrap());
        }
    }

    #[test]
    fn centralizer_examples() {
        let a = e4();
        let full = a.full_space();
        assert_eq!(a.centralizer(&full, Side::Left).unwrap(), a.span_of_units(&[0, 1]));
        assert_eq!(a.centralizer(&full, Side::Right).unwrap(), a.span_of_units(&[2, 3]));
        assert!(a.centralizer(&full, Side::Both).unwrap().is_zero());
        assert_eq!(a.centralizer(&a.zero_space(), Side::Both).unwrap(), full);
    }

    #[test]
    fn normalizer_examples() {
        let a = e4();
        let h = a.span_of_units(&[2, 3]);
        assert_eq!(a.normalizer(&h).unwrap(), h);
        assert_eq!(a.normalizer(&a.full_space()).unwrap(), a.full_space());
        let heis = corpus::heisenberg(Q);
        let hx = heis.span_of_units(&[0]);
        let n = heis.normalizer(&hx).unwrap();
        assert_eq!(n, heis.span_of_units(&[0, 2]));
    }

    #[test]
    fn quotient_examples() {
        let a = e4();
        let q = a.quotient(&a.span_of_units(&[0, 1])).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.product(&q.algebra.full_space(), &q.algebra.full_space()).unwrap().is_zero());
        let id = a.quotient(&a.zero_space()).unwrap();
        assert_eq!(id.algebra.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(id.algebra.basis_product(i, j), a.basis_product(i, j));
            }
        }
        assert_eq!(a.quotient(&a.full_space()).unwrap().algebra.dim(), 0);
        assert_eq!(a.quotient(&a.span_of_units(&[2])).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let a = corpus::sl2(Q).direct_sum(&e4()).unwrap();
        let ideal = a.span_of_units(&[3, 4]);
        let q = a.quotient(&ideal).unwrap();
        let xs = [v(&[1, -1, 2, 0, 3, 1, 1]), v(&[0, 2, 1, 1, -1, 0, 2]), v(&[3, 0, 0, 1, 1, 1, -2])];
        for x in &xs {
            for y in &xs {
                let lhs = q.project(&a.mul(x, y).unwrap());
                let rhs = q.algebra.mul(&q.project(x), &q.project(y)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn semidirect_examples() {
        let ab = corpus::abelian(Q, 2);
        let p = ab.semidirect_by_derivation(&Matrix::identity(Q, 2)).unwrap();
        assert_eq!(p.mul(&p.unit(2), &p.unit(0)).unwrap(), p.unit(0));
        assert_eq!(p.mul(&p.unit(0), &p.unit(2)).unwrap(), p.unit(0).scale(&Q.from_i64(-1)));
        let sl = corpus::sl2(Q);
        let z = sl.semidirect_by_derivation(&Matrix::zeros(Q, 3, 3)).unwrap();
        assert!(z.center().contains(&z.unit(3)).unwrap());
        let not_der = Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(sl.semidirect_by_derivation(&not_der).unwrap_err(), Error::NotADerivation);
    }

    #[test]
    fn restrict_reproduces_parent_products() {
        let a = e4();
        let carrier = a.span(&[v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        if a.is_subalgebra(&carrier).unwrap() {
            let view = a.restrict(&carrier).unwrap();
            for i in 0..view.algebra.dim() {
                for j in 0..view.algebra.dim() {
                    let parent = a
                        .mul(&view.embed(&view.algebra.unit(i)), &view.embed(&view.algebra.unit(j)))
                        .unwrap();
                    assert_eq!(view.embed(view.algebra.basis_product(i, j)), parent);
                }
            }
        }
        let b = a.span_of_units(&[0, 1, 2]);
        let view = a.restrict(&b).unwrap();
        assert_eq!(view.algebra.dim(), 3);
        assert!(a.restrict(&a.span(&[v(&[0, 1, 0, 1])]).unwrap()).is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(e4().reduce_mod(3).unwrap().basis_product(3, 0), &Vector::from_ints(f3, &[1, 0, 0, 0]));
    }
}
