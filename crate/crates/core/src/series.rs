//! Products of subspaces, closures, the lower central and derived series,
//! and the two-sided insertion map `f(B, C) = BC + CB` with its iterates.

use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// A descending series run until two consecutive terms agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    /// `terms[0] = B`; the last two entries are equal.
    pub terms: Vec<Subspace>,
    /// Index of the first term equal to its successor.
    pub stabilized_at: usize,
}

impl SeriesResult {
    pub fn limit(&self) -> &Subspace {
        &self.terms[self.stabilized_at]
    }

    pub fn reaches_zero(&self) -> bool {
        self.limit().is_zero()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

pub fn subspace_product(a: &LeibnizAlgebra, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    a.product(u, v)
}

/// `f(B, C) = BC + CB`, taken as a plain subspace sum.
pub fn f_pair(a: &LeibnizAlgebra, b: &Subspace, c: &Subspace) -> Result<Subspace> {
    a.two_sided_product(b, c)
}

/// `f^1 = f`, `f^{n+1}(B, C) = f(B, f^n(B, C))`.
pub fn f_iter(a: &LeibnizAlgebra, b: &Subspace, c: &Subspace, n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::InvalidParams("f_iter needs n >= 1".into()));
    }
    let mut acc = f_pair(a, b, c)?;
    for _ in 1..n {
        if acc.is_zero() {
            break;
        }
        acc = f_pair(a, b, &acc)?;
    }
    Ok(acc)
}

/// `B^1 = B`, `B^{k+1} = B B^k`, for any subspace `B`.
pub fn power(a: &LeibnizAlgebra, b: &Subspace, n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::InvalidParams("powers start at 1".into()));
    }
    let mut acc = b.clone();
    for _ in 1..n {
        acc = a.product(b, &acc)?;
    }
    Ok(acc)
}

fn require_subalgebra(a: &LeibnizAlgebra, b: &Subspace) -> Result<()> {
    if !a.is_subalgebra(b)? {
        return Err(Error::NotASubalgebra);
    }
    Ok(())
}

fn run_series(
    a: &LeibnizAlgebra,
    b: &Subspace,
    kind: SeriesKind,
) -> Result<SeriesResult> {
    require_subalgebra(a, b)?;
    let mut terms = vec![b.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let next = match kind {
            SeriesKind::LowerCentral => a.product(b, last)?,
            SeriesKind::Derived => a.product(last, last)?,
        };
        let done = &next == last;
        terms.push(next);
        if done {
            let stabilized_at = terms.len() - 2;
            return Ok(SeriesResult {
                kind,
                terms,
                stabilized_at,
            });
        }
    }
}

pub fn lower_central(a: &LeibnizAlgebra, b: &Subspace) -> Result<SeriesResult> {
    run_series(a, b, SeriesKind::LowerCentral)
}

pub fn derived(a: &LeibnizAlgebra, b: &Subspace) -> Result<SeriesResult> {
    run_series(a, b, SeriesKind::Derived)
}

/// Stable term of the lower central series of `B`.
pub fn omega(a: &LeibnizAlgebra, b: &Subspace) -> Result<Subspace> {
    Ok(lower_central(a, b)?.limit().clone())
}

pub fn is_nilpotent(a: &LeibnizAlgebra, b: &Subspace) -> Result<bool> {
    Ok(lower_central(a, b)?.reaches_zero())
}

pub fn is_solvable(a: &LeibnizAlgebra, b: &Subspace) -> Result<bool> {
    Ok(derived(a, b)?.reaches_zero())
}

/// Smallest subalgebra containing `s`.
pub fn subalgebra_closure(a: &LeibnizAlgebra, s: &Subspace) -> Result<Subspace> {
    let mut v = s.clone();
    loop {
        let next = v.sum(&a.product(&v, &v)?)?;
        if next == v {
            return Ok(v);
        }
        v = next;
    }
}

/// Smallest ideal of the subalgebra `ambient` containing `s ⊆ ambient`.
pub fn ideal_closure(a: &LeibnizAlgebra, s: &Subspace, ambient: &Subspace) -> Result<Subspace> {
    require_subalgebra(a, ambient)?;
    if !s.is_subspace_of(ambient) {
        return Err(Error::NotInsideAmbient);
    }
    Ok(ideal_closure_unchecked(a, s, ambient))
}

pub(crate) fn ideal_closure_unchecked(a: &LeibnizAlgebra, s: &Subspace, ambient: &Subspace) -> Subspace {
    let mut i = s.clone();
    loop {
        let next = i
            .sum(&a.two_sided_product(ambient, &i).expect("same ambient"))
            .expect("same ambient");
        if next == i {
            return i;
        }
        i = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::Vector;
    use crate::scalar::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn product_examples() {
        let a = corpus::example_e4(Q);
        let full = a.full_space();
        assert_eq!(subspace_product(&a, &full, &full).unwrap(), a.span_of_units(&[0, 1]));
        assert!(subspace_product(&a, &full, &a.zero_space()).unwrap().is_zero());
        let ab = corpus::abelian(Q, 3);
        assert!(subspace_product(&ab, &ab.full_space(), &ab.full_space()).unwrap().is_zero());
    }

    #[test]
    fn f_examples() {
        let a = corpus::example_e4(Q);
        let t = a.span_of_units(&[3]);
        let z = a.span_of_units(&[2]);
        let y = a.span_of_units(&[1]);
        assert!(f_pair(&a, &t, &z).unwrap().is_zero());
        assert!(f_pair(&a, &t, &a.zero_space()).unwrap().is_zero());
        assert_eq!(f_pair(&a, &z, &y).unwrap(), a.span_of_units(&[0]));
        assert_eq!(f_iter(&a, &z, &y, 1).unwrap(), f_pair(&a, &z, &y).unwrap());
        assert!(f_iter(&a, &z, &y, 0).is_err());
    }

    #[test]
    fn lower_central_examples() {
        let a = corpus::example_e4(Q);
        let lc = lower_central(&a, &a.full_space()).unwrap();
        assert_eq!(lc.dims(), vec![4, 2, 2]);
        assert_eq!(lc.limit(), &a.span_of_units(&[0, 1]));
        let b = a.span_of_units(&[0, 1, 2]);
        let lcb = lower_central(&a, &b).unwrap();
        assert_eq!(lcb.terms[1], a.span_of_units(&[0]));
        assert!(lcb.terms[2].is_zero());
        assert_eq!(lcb.stabilized_at, 2);
        let ab = corpus::abelian(Q, 3);
        for s in [lower_central(&ab, &ab.full_space()).unwrap(), derived(&ab, &ab.full_space()).unwrap()] {
            assert_eq!(s.dims(), vec![3, 0, 0]);
            assert_eq!(s.stabilized_at, 1);
        }
        assert_eq!(
            lower_central(&a, &a.span(&[Vector::from_ints(Q, &[0, 1, 0, 1])]).unwrap()).unwrap_err(),
            Error::NotASubalgebra
        );
    }

    #[test]
    fn omega_examples() {
        let a = corpus::example_e4(Q);
        assert_eq!(omega(&a, &a.full_space()).unwrap(), a.span_of_units(&[0, 1]));
        let h = corpus::heisenberg(Q);
        assert!(omega(&h, &h.full_space()).unwrap().is_zero());
        let sl = corpus::sl2(Q);
        assert_eq!(omega(&sl, &sl.full_space()).unwrap(), sl.full_space());
    }

    #[test]
    fn closure_examples() {
        let a = corpus::example_e4(Q);
        let full = a.full_space();
        assert_eq!(
            ideal_closure(&a, &a.span_of_units(&[2]), &full).unwrap(),
            a.span_of_units(&[0, 2])
        );
        let sub = a.span_of_units(&[2, 3]);
        assert_eq!(subalgebra_closure(&a, &sub).unwrap(), sub);
        assert_eq!(
            ideal_closure(&a, &a.span_of_units(&[3]), &a.span_of_units(&[0, 1])).unwrap_err(),
            Error::NotInsideAmbient
        );
        let y_plus_t = a.span(&[Vector::from_ints(Q, &[0, 1, 0, 1])]).unwrap();
        assert_eq!(ideal_closure(&a, &a.zero_space(), &y_plus_t).unwrap_err(), Error::NotASubalgebra);
    }

    #[test]
    fn predicates() {
        let a = corpus::example_e4(Q);
        assert!(is_solvable(&a, &a.full_space()).unwrap());
        assert!(!is_nilpotent(&a, &a.full_space()).unwrap());
        let zero = corpus::abelian(Q, 0);
        assert!(is_solvable(&zero, &zero.full_space()).unwrap());
        assert!(is_nilpotent(&zero, &zero.full_space()).unwrap());
        let p3 = corpus::char_p_parts(3).unwrap();
        assert!(!is_solvable(&p3.algebra, &p3.m).unwrap());
        assert!(is_nilpotent(&p3.algebra, &p3.l_tensor_n).unwrap());
    }

    #[test]
    fn cyclic_omega() {
        let nil = corpus::cyclic(Q, &[0, 0]).unwrap();
        assert!(omega(&nil, &nil.full_space()).unwrap().is_zero());
        let c2 = corpus::cyclic(Q, &[1]).unwrap();
        assert_eq!(omega(&c2, &c2.full_space()).unwrap(), c2.span_of_units(&[1]));
    }
}
