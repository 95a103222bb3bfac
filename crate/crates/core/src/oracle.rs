//! Exhaustive ground truth over small prime fields.
//!
//! Everything here works on raw residues: the structure constants are copied
//! out of the algebra once, vectors are digit arrays mod `p`, subspaces are
//! bitsets over all `p^n` vectors, and every predicate is checked straight
//! from its definition. Nothing here calls the closure, series or
//! subinvariance code it is used to certify; the comparison drivers at the
//! bottom of the file are the only place both sides meet.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::scalar::{Field, Scalar};
use crate::{series, subinvariance};

/// Largest ambient dimension enumerated over `field`.
pub fn enumeration_cap(field: Field) -> Result<usize> {
    match field {
        Field::Prime(2) => Ok(5),
        Field::Prime(3) | Field::Prime(5) => Ok(4),
        Field::Prime(p) => Err(Error::ScopeExceeded(format!("F_{p} is outside the enumeration scope"))),
        Field::Rationals => Err(Error::UnsupportedField(field.to_string())),
    }
}

fn check_scope(n: usize, field: Field) -> Result<u64> {
    let cap = enumeration_cap(field)?;
    if n > cap {
        return Err(Error::ScopeExceeded(format!("dimension {n} over {field} exceeds cap {cap}")));
    }
    Ok(field.characteristic())
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= u128::from(q).pow(n - i) - 1;
        den *= u128::from(q).pow(i + 1) - 1;
    }
    (num / den) as u64
}

pub fn subspace_count(n: u32, q: u64) -> u64 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

type Digits = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).expect("nonzero residue")
}

/// Reduced row echelon form mod `p`, zero rows dropped.
fn rref_mod(mut rows: Vec<Digits>, p: u64) -> Vec<Digits> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// All echelon forms of subspaces of `F_p^n`, by dimension, then pivot set, then free entries.
fn echelon_forms(n: usize, p: u64) -> Vec<Vec<Digits>> {
    let mut out = Vec::new();
    for k in 0..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let mut free = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let total = p.pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0u64; n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                let mut rest = code;
                for &(r, c) in &free {
                    rows[r][c] = rest % p;
                    rest /= p;
                }
                out.push(rows);
            }
            // next k-combination of 0..n
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if pivots[i] < n - k + i {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if k == 0 || i == usize::MAX {
                break;
            }
        }
    }
    out
}

fn to_subspace(field: Field, n: usize, rows: &[Digits]) -> Subspace {
    let p = field.characteristic();
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&v| Scalar::Residue { value: v, p }).collect())
        .collect();
    Subspace::from_rows(field, n, rows)
}

/// Every subspace of `F_p^n` exactly once, in echelon order.
pub fn enumerate_subspaces(n: usize, field: Field) -> Result<Vec<Subspace>> {
    let p = check_scope(n, field)?;
    Ok(echelon_forms(n, p).iter().map(|rows| to_subspace(field, n, rows)).collect())
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("oracle works over prime fields"),
    }
}

/// Per-algebra enumeration with memoized ideal and subinvariance relations.
pub struct OracleSession {
    field: Field,
    p: u64,
    n: usize,
    /// `consts[(i * n + j) * n + k]` is the coefficient of `e_k` in `e_i e_j`.
    consts: Vec<u64>,
    spaces: Vec<Vec<Digits>>,
    members: Vec<Vec<u64>>,
    index: HashMap<Vec<Digits>, usize>,
    ideal_memo: RefCell<HashMap<(usize, usize), bool>>,
    sub_memo: RefCell<HashMap<(usize, usize), bool>>,
}

impl OracleSession {
    pub fn new(a: &LeibnizAlgebra) -> Result<OracleSession> {
        let field = a.field();
        let n = a.dim();
        let p = check_scope(n, field)?;
        let mut consts = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                consts.extend(a.basis_product(i, j).coords().iter().map(residue));
            }
        }
        let spaces = echelon_forms(n, p);
        let total = p.pow(n as u32) as usize;
        let words = total.div_ceil(64);
        let mut members = Vec::with_capacity(spaces.len());
        let mut index = HashMap::with_capacity(spaces.len());
        for (idx, rows) in spaces.iter().enumerate() {
            let mut bits = vec![0u64; words];
            let k = rows.len();
            for code in 0..p.pow(k as u32) {
                let mut v = vec![0u64; n];
                let mut rest = code;
                for row in rows {
                    let c = rest % p;
                    rest /= p;
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + c * r) % p;
                    }
                }
                let e = encode(&v, p);
                bits[e / 64] |= 1 << (e % 64);
            }
            members.push(bits);
            index.insert(rows.clone(), idx);
        }
        Ok(OracleSession {
            field,
            p,
            n,
            consts,
            spaces,
            members,
            index,
            ideal_memo: RefCell::new(HashMap::new()),
            sub_memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn subspace(&self, idx: usize) -> Subspace {
        to_subspace(self.field, self.n, &self.spaces[idx])
    }

    /// Index of a subspace of the session's ambient space.
    pub fn locate(&self, s: &Subspace) -> Result<usize> {
        if s.field() != self.field || s.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: s.ambient_dim(),
            });
        }
        let rows: Vec<Digits> = s.rows().iter().map(|r| r.iter().map(residue).collect()).collect();
        Ok(self.span(rows))
    }

    fn span(&self, vectors: Vec<Digits>) -> usize {
        let rows = if vectors.is_empty() {
            Vec::new()
        } else {
            rref_mod(vectors, self.p)
        };
        self.index[&rows]
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Digits {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % p;
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] = (out[k] + c * self.consts[base + k]) % p;
                }
            }
        }
        out
    }

    fn contains(&self, big: usize, small: usize) -> bool {
        self.members[small]
            .iter()
            .zip(&self.members[big])
            .all(|(s, b)| s & !b == 0)
    }

    fn contains_vector(&self, space: usize, v: &[u64]) -> bool {
        let e = encode(v, self.p);
        self.members[space][e / 64] >> (e % 64) & 1 == 1
    }

    fn dim(&self, idx: usize) -> usize {
        self.spaces[idx].len()
    }

    fn full(&self) -> usize {
        self.spaces.len() - 1
    }

    fn zero(&self) -> usize {
        0
    }

    /// `span{uv : u in U, v in V}`.
    fn product(&self, u: usize, v: usize) -> usize {
        let mut prods = Vec::new();
        for x in &self.spaces[u] {
            for y in &self.spaces[v] {
                prods.push(self.mul(x, y));
            }
        }
        self.span(prods)
    }

    fn sum(&self, u: usize, v: usize) -> usize {
        let mut rows = self.spaces[u].clone();
        rows.extend(self.spaces[v].iter().cloned());
        self.span(rows)
    }

    fn products_inside(&self, u: usize, v: usize, target: usize) -> bool {
        self.spaces[u]
            .iter()
            .all(|x| self.spaces[v].iter().all(|y| self.contains_vector(target, &self.mul(x, y))))
    }

    pub fn is_subalgebra_idx(&self, s: usize) -> bool {
        self.products_inside(s, s, s)
    }

    /// `J ◁ K`: `J ⊆ K`, `KJ ⊆ J` and `JK ⊆ J`.
    pub fn is_ideal_idx(&self, j: usize, k: usize) -> bool {
        if let Some(&v) = self.ideal_memo.borrow().get(&(j, k)) {
            return v;
        }
        let v = self.contains(k, j) && self.products_inside(k, j, j) && self.products_inside(j, k, j);
        self.ideal_memo.borrow_mut().insert((j, k), v);
        v
    }

    pub fn is_nilpotent_idx(&self, s: usize) -> bool {
        let mut term = s;
        loop {
            let next = self.product(s, term);
            if next == self.zero() {
                return true;
            }
            if next == term {
                return false;
            }
            term = next;
        }
    }

    pub fn is_solvable_idx(&self, s: usize) -> bool {
        let mut term = s;
        loop {
            let next = self.product(term, term);
            if next == self.zero() {
                return true;
            }
            if next == term {
                return false;
            }
            term = next;
        }
    }

    /// Indices of all subalgebras, in echelon order.
    pub fn subalgebras(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.is_subalgebra_idx(s)).collect()
    }

    /// Indices of all two-sided ideals of `A`.
    pub fn ideals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.is_ideal_idx(s, self.full())).collect()
    }

    /// `B` is subinvariant in `K` iff `B = K` or some proper ideal `J ◁ K`
    /// containing `B` has `B` subinvariant in `J`.
    fn subinvariant_in(&self, k: usize, b: usize) -> bool {
        if k == b {
            return true;
        }
        if let Some(&v) = self.sub_memo.borrow().get(&(k, b)) {
            return v;
        }
        let dk = self.dim(k);
        let db = self.dim(b);
        let mut found = false;
        for j in 0..self.len() {
            let dj = self.dim(j);
            if dj < db || dj >= dk || !self.contains(j, b) || !self.contains(k, j) {
                continue;
            }
            if self.is_ideal_idx(j, k) && self.subinvariant_in(j, b) {
                found = true;
                break;
            }
        }
        self.sub_memo.borrow_mut().insert((k, b), found);
        found
    }

    pub fn subinvariant_idx(&self, b: usize) -> bool {
        self.subinvariant_in(self.full(), b)
    }

    pub fn subinvariant(&self, b: &Subspace) -> Result<bool> {
        let idx = self.locate(b)?;
        if !self.is_subalgebra_idx(idx) {
            return Err(Error::NotASubalgebra);
        }
        Ok(self.subinvariant_idx(idx))
    }

    /// The smallest enumerated ideal of `K` containing `S`, found by scanning
    /// every ideal of `K` that contains `S`.
    pub fn minimal_ideal_containing(&self, s: usize, k: usize) -> Result<usize> {
        let candidates: Vec<usize> = (0..self.len())
            .filter(|&j| self.contains(j, s) && self.contains(k, j) && self.is_ideal_idx(j, k))
            .collect();
        let best = *candidates
            .iter()
            .min_by_key(|&&j| self.dim(j))
            .ok_or(Error::NotInsideAmbient)?;
        if candidates.iter().any(|&j| !self.contains(j, best)) {
            return Err(Error::VerificationFailed("ideals containing S have no least element".into()));
        }
        Ok(best)
    }

    fn all_vectors(&self) -> impl Iterator<Item = Digits> + '_ {
        let (n, p) = (self.n, self.p);
        (0..p.pow(n as u32)).map(move |code| decode(code as usize, n, p))
    }

    /// `{x : xA = Ax = 0}` by scanning all vectors.
    pub fn center_idx(&self) -> usize {
        let units: Vec<Digits> = (0..self.n)
            .map(|i| (0..self.n).map(|j| u64::from(i == j)).collect())
            .collect();
        let zero = vec![0u64; self.n];
        let members: Vec<Digits> = self
            .all_vectors()
            .filter(|x| units.iter().all(|e| self.mul(x, e) == zero && self.mul(e, x) == zero))
            .collect();
        self.span(members)
    }

    fn left_op_nilpotent(&self, x: &[u64]) -> bool {
        let zero = vec![0u64; self.n];
        (0..self.n).all(|i| {
            let mut v: Digits = (0..self.n).map(|j| u64::from(i == j)).collect();
            for _ in 0..self.n {
                v = self.mul(x, &v);
            }
            v == zero
        })
    }

    /// Every `L_x`, over all vectors `x`, is nilpotent.
    pub fn all_left_ops_nilpotent(&self) -> bool {
        self.all_vectors().all(|x| self.left_op_nilpotent(&x))
    }

    /// Sum of all solvable ideals and sum of all nilpotent ideals, each verified.
    pub fn rad_nilrad_idx(&self) -> Result<(usize, usize)> {
        let mut rad = self.zero();
        let mut nil = self.zero();
        for j in self.ideals() {
            if self.is_solvable_idx(j) {
                rad = self.sum(rad, j);
            }
            if self.is_nilpotent_idx(j) {
                nil = self.sum(nil, j);
            }
        }
        if !self.is_solvable_idx(rad) {
            return Err(Error::SumNotSolvable);
        }
        if !self.is_nilpotent_idx(nil) {
            return Err(Error::SumNotNilpotent);
        }
        Ok((rad, nil))
    }
}

fn encode(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as usize
}

fn decode(mut code: usize, n: usize, p: u64) -> Digits {
    let mut v = vec![0u64; n];
    for x in v.iter_mut() {
        *x = code as u64 % p;
        code /= p as usize;
    }
    v
}

/// Subinvariance straight from the definition.
pub fn oracle_subinvariant(a: &LeibnizAlgebra, b: &Subspace) -> Result<bool> {
    OracleSession::new(a)?.subinvariant(b)
}

/// Radical and nilradical as sums of all solvable, resp. nilpotent, ideals.
pub fn oracle_rad_nilrad(a: &LeibnizAlgebra) -> Result<(Subspace, Subspace)> {
    let s = OracleSession::new(a)?;
    let (r, n) = s.rad_nilrad_idx()?;
    Ok((s.subspace(r), s.subspace(n)))
}

/// Fast path against oracle on one algebra.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceReport {
    pub algebra: String,
    pub subspaces: usize,
    pub subalgebras: usize,
    pub subinvariant: usize,
    /// Subalgebras on which the two subinvariance answers differ.
    pub mismatches: Vec<Subspace>,
    pub closure_pairs: usize,
    /// `(S, K)` where the fast ideal closure differs from the least enumerated ideal.
    pub closure_mismatches: Vec<(Subspace, Subspace)>,
    pub nilpotent: bool,
    /// `A` nilpotent iff every `L_x` is nilpotent.
    pub engel_agrees: bool,
    /// For nilpotent `A`, every nonzero ideal meets the center nontrivially.
    pub ideals_meet_center: Option<bool>,
    /// `A` nilpotent iff every subalgebra is subinvariant.
    pub all_subinvariant_iff_nilpotent: bool,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.closure_mismatches.is_empty()
            && self.engel_agrees
            && self.ideals_meet_center != Some(false)
            && self.all_subinvariant_iff_nilpotent
    }
}

/// Compare `is_subinvariant` and `ideal_closure` with their definitional
/// counterparts on every subalgebra `B` (and every subspace `S ⊆ K` of every
/// subalgebra `K`), and run the Engel, center and all-subinvariant checks.
pub fn check_equivalence(a: &LeibnizAlgebra) -> Result<EquivalenceReport> {
    let s = OracleSession::new(a)?;
    let subalgebras = s.subalgebras();
    let mut report = EquivalenceReport {
        algebra: a.name().to_string(),
        subspaces: s.len(),
        subalgebras: subalgebras.len(),
        ..Default::default()
    };
    let mut all_sub = true;
    for &b in &subalgebras {
        let sb = s.subspace(b);
        let fast = subinvariance::is_subinvariant(a, &sb)?.subinvariant;
        let slow = s.subinvariant_idx(b);
        all_sub &= slow;
        if slow {
            report.subinvariant += 1;
        }
        if fast != slow {
            report.mismatches.push(sb);
        }
    }
    for &k in &subalgebras {
        let sk = s.subspace(k);
        for sub in 0..s.len() {
            if !s.contains(k, sub) {
                continue;
            }
            report.closure_pairs += 1;
            let ss = s.subspace(sub);
            let fast = series::ideal_closure(a, &ss, &sk)?;
            let slow = s.subspace(s.minimal_ideal_containing(sub, k)?);
            if fast != slow {
                report.closure_mismatches.push((ss, sk.clone()));
            }
        }
    }
    report.nilpotent = s.is_nilpotent_idx(s.full());
    report.engel_agrees = report.nilpotent == s.all_left_ops_nilpotent();
    report.all_subinvariant_iff_nilpotent = report.nilpotent == all_sub;
    if report.nilpotent {
        let z = s.center_idx();
        let ok = s
            .ideals()
            .into_iter()
            .filter(|&j| j != s.zero())
            .all(|j| s.dim(s.sum(j, z)) < s.dim(j) + s.dim(z));
        report.ideals_meet_center = Some(ok);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for (n, p, expected) in [(2, 2, 5), (4, 2, 67), (4, 3, 212), (5, 2, 374), (4, 5, 1120), (1, 3, 2), (0, 2, 1)] {
            let spaces = enumerate_subspaces(n, fp(p)).unwrap();
            assert_eq!(spaces.len() as u64, expected);
            assert_eq!(subspace_count(n as u32, p), expected);
            let mut sorted = spaces.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), spaces.len());
        }
        assert!(matches!(enumerate_subspaces(5, fp(3)), Err(Error::ScopeExceeded(_))));
        assert!(matches!(enumerate_subspaces(6, fp(2)), Err(Error::ScopeExceeded(_))));
        assert!(matches!(enumerate_subspaces(2, fp(7)), Err(Error::ScopeExceeded(_))));
        assert!(matches!(enumerate_subspaces(2, Field::Rationals), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn rref_mod_examples() {
        assert_eq!(rref_mod(vec![vec![2, 1], vec![1, 2]], 3), vec![vec![1, 2]]);
        assert_eq!(rref_mod(vec![vec![0, 0]], 5), Vec::<Digits>::new());
    }

    #[test]
    fn e4_mod_3_subinvariance() {
        let a = corpus::example_e4(fp(3));
        let s = OracleSession::new(&a).unwrap();
        assert!(s.subinvariant(&a.span_of_units(&[2])).unwrap());
        assert!(!s.subinvariant(&a.span_of_units(&[3])).unwrap());
        assert!(s.subinvariant(&a.full_space()).unwrap());
    }

    #[test]
    fn rad_nilrad_examples() {
        let f5 = fp(5);
        let e4 = corpus::example_e4(f5);
        let (r, n) = oracle_rad_nilrad(&e4).unwrap();
        assert_eq!(r, e4.full_space());
        assert_eq!(n, e4.span_of_units(&[0, 1, 2]));
        let s = corpus::sl2(f5);
        let (r, n) = oracle_rad_nilrad(&s).unwrap();
        assert!(r.is_zero() && n.is_zero());
        let ab = corpus::abelian(f5, 3);
        let (r, n) = oracle_rad_nilrad(&ab).unwrap();
        assert!(r.is_full() && n.is_full());
    }

    #[test]
    fn equivalence_on_e4_and_heisenberg() {
        for a in [corpus::example_e4(fp(2)), corpus::heisenberg(fp(3)), corpus::sl2(fp(3))] {
            let r = check_equivalence(&a).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
