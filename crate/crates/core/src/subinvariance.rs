//! Subinvariant subalgebras: decision with witness chains, joins, the
//! closure under `f(c, -)`, and the subalgebra generated by all
//! subinvariant subalgebras inside a given one.

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::oracle;
use crate::series::{self, ideal_closure_unchecked};

/// `A = terms[0] ▷ terms[1] ▷ ... ▷ terms[last] = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSeries {
    terms: Vec<Subspace>,
}

impl NormalSeries {
    /// Checks that the chain starts at `A`, strictly decreases, and that each
    /// term is a subalgebra and an ideal of its predecessor.
    pub fn new(a: &LeibnizAlgebra, terms: Vec<Subspace>) -> Result<NormalSeries> {
        let first = terms
            .first()
            .ok_or_else(|| Error::VerificationFailed("empty normal series".into()))?;
        if !first.is_full() {
            return Err(Error::VerificationFailed("normal series must start at A".into()));
        }
        for t in &terms {
            a.check_subspace(t)?;
            if !a.is_subalgebra(t)? {
                return Err(Error::VerificationFailed(format!("{t} is not a subalgebra")));
            }
        }
        for w in terms.windows(2) {
            if w[1].dim() >= w[0].dim() || !w[1].is_subspace_of(&w[0]) {
                return Err(Error::VerificationFailed(format!("{} does not strictly contain {}", w[0], w[1])));
            }
            if !a.is_ideal_of(&w[1], &w[0])? {
                return Err(Error::VerificationFailed(format!("{} is not an ideal of {}", w[1], w[0])));
            }
        }
        Ok(NormalSeries { terms })
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bottom(&self) -> &Subspace {
        self.terms.last().expect("series is nonempty")
    }
}

#[derive(Clone, Debug)]
pub struct SubinvarianceResult {
    pub subinvariant: bool,
    /// Refined witness chain, present when `subinvariant`.
    pub series: Option<NormalSeries>,
    /// `A_0 = A`, `A_{k+1}` the ideal closure of `B` in `A_k`, up to the first repeat.
    pub closure_chain: Vec<Subspace>,
    /// When not subinvariant: the stable `J ⊋ B` whose ideal closure of `B` is `J` itself.
    pub counterwitness: Option<Subspace>,
}

fn descending_closure_chain(a: &LeibnizAlgebra, b: &Subspace) -> Vec<Subspace> {
    let mut chain = vec![a.full_space()];
    loop {
        let last = chain.last().expect("nonempty");
        let next = ideal_closure_unchecked(a, b, last);
        if &next == last {
            return chain;
        }
        chain.push(next);
    }
}

/// Some `M` with `J ◁ M ◁ K` and `J ⊊ M ⊊ K`, given `J ◁ K`.
fn intermediate(a: &LeibnizAlgebra, k: &Subspace, j: &Subspace) -> Option<Subspace> {
    let strictly_between = |m: &Subspace| m.dim() > j.dim() && m.dim() < k.dim();
    let square = a.product(k, k).ok()?.sum(j).ok()?;
    if strictly_between(&square) {
        return Some(square);
    }
    for v in k.basis() {
        if j.contains(&v).ok()? {
            continue;
        }
        let m = ideal_closure_unchecked(a, &j.extend(&[v]).ok()?, k);
        if strictly_between(&m) {
            return Some(m);
        }
    }
    None
}

fn refine(a: &LeibnizAlgebra, k: &Subspace, j: &Subspace, out: &mut Vec<Subspace>) {
    if let Some(m) = intermediate(a, k, j) {
        refine(a, k, &m, out);
        refine(a, &m, j, out);
    } else {
        out.push(j.clone());
    }
}

/// Decide whether `B` is subinvariant in `A` by the descending ideal-closure
/// chain. A positive answer comes with a verified normal series, refined by
/// inserting intermediate ideals (`K² + J`, then ideal closures of `J + span{v}`)
/// wherever one exists.
pub fn is_subinvariant(a: &LeibnizAlgebra, b: &Subspace) -> Result<SubinvarianceResult> {
    a.check_subspace(b)?;
    if !a.is_subalgebra(b)? {
        return Err(Error::NotASubalgebra);
    }
    let closure_chain = descending_closure_chain(a, b);
    let limit = closure_chain.last().expect("nonempty");
    if limit != b {
        return Ok(SubinvarianceResult {
            subinvariant: false,
            series: None,
            counterwitness: Some(limit.clone()),
            closure_chain,
        });
    }
    let mut terms = vec![closure_chain[0].clone()];
    for w in closure_chain.windows(2) {
        refine(a, &w[0], &w[1], &mut terms);
    }
    let series = NormalSeries::new(a, terms)?;
    Ok(SubinvarianceResult {
        subinvariant: true,
        series: Some(series),
        closure_chain,
        counterwitness: None,
    })
}

/// Subalgebra generated by two subinvariant subalgebras. Over characteristic 0
/// the result is checked to be subinvariant.
pub fn join_subinvariant(a: &LeibnizAlgebra, b: &Subspace, c: &Subspace) -> Result<Subspace> {
    for s in [b, c] {
        if !is_subinvariant(a, s)?.subinvariant {
            return Err(Error::NotSubinvariantInput);
        }
    }
    let d = series::subalgebra_closure(a, &b.sum(c)?)?;
    if a.field().is_char_zero() && !is_subinvariant(a, &d)?.subinvariant {
        return Err(Error::TheoremViolation(format!(
            "join {d} of subinvariant {b} and {c} is not subinvariant"
        )));
    }
    Ok(d)
}

/// Smallest subalgebra `B̄ ⊇ B` with `cB̄ + B̄c ⊆ B̄`. Over characteristic 0,
/// when `B` is subinvariant the result is checked to be subinvariant.
pub fn bar_closure(a: &LeibnizAlgebra, c: &Vector, b: &Subspace) -> Result<Subspace> {
    a.check_vector(c)?;
    a.check_subspace(b)?;
    if !a.is_subalgebra(b)? {
        return Err(Error::NotASubalgebra);
    }
    let cs = a.span(std::slice::from_ref(c))?;
    let mut v = b.clone();
    loop {
        let grown = v.sum(&series::f_pair(a, &cs, &v)?)?;
        let next = series::subalgebra_closure(a, &grown)?;
        if next == v {
            break;
        }
        v = next;
    }
    if a.field().is_char_zero() && is_subinvariant(a, b)?.subinvariant && !is_subinvariant(a, &v)?.subinvariant {
        return Err(Error::TheoremViolation(format!(
            "closure {v} of subinvariant {b} under f({c}, -) is not subinvariant"
        )));
    }
    Ok(v)
}

/// `Σ_{i ≥ 0} f^i({c}, B)` as a plain subspace sum.
pub fn orbit_span(a: &LeibnizAlgebra, c: &Vector, b: &Subspace) -> Result<Subspace> {
    a.check_vector(c)?;
    let cs = a.span(std::slice::from_ref(c))?;
    let mut acc = b.clone();
    let mut term = b.clone();
    loop {
        term = series::f_pair(a, &cs, &term)?;
        let next = acc.sum(&term)?;
        if next == acc {
            return Ok(acc);
        }
        acc = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Underline {
    /// Subalgebra generated by every subinvariant subalgebra of `A` inside `B`.
    pub span: Subspace,
    /// Number of enumerated subinvariant subalgebras of `A` inside `B`.
    pub contributors: usize,
    pub ideal_of_b: bool,
    pub ideal_of_a: bool,
}

/// Enumerates the subspaces of `B` over `F_p`; `dim B` is bounded by the oracle's cap.
pub fn underline_b(a: &LeibnizAlgebra, b: &Subspace) -> Result<Underline> {
    let field = a.field();
    if field.is_char_zero() {
        return Err(Error::UnsupportedField(field.to_string()));
    }
    a.check_subspace(b)?;
    if !a.is_subalgebra(b)? {
        return Err(Error::NotASubalgebra);
    }
    let cap = oracle::enumeration_cap(field)?;
    if b.dim() > cap {
        return Err(Error::DimTooLargeForEnumeration { dim: b.dim(), cap });
    }
    let basis = b.basis();
    let mut acc = a.zero_space();
    let mut contributors = 0;
    for local in oracle::enumerate_subspaces(b.dim(), field)? {
        let vs: Vec<Vector> = local.basis().iter().map(|w| b.combine(w.coords())).collect();
        let s = a.span(&vs)?;
        debug_assert!(s.dim() == local.dim() && basis.len() == b.dim());
        if a.is_subalgebra(&s)? && is_subinvariant(a, &s)?.subinvariant {
            contributors += 1;
            acc = acc.sum(&s)?;
        }
    }
    let span = series::subalgebra_closure(a, &acc)?;
    Ok(Underline {
        ideal_of_b: a.is_ideal_of(&span, b)?,
        ideal_of_a: a.is_ideal(&span)?,
        span,
        contributors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn e4_witness_chain_has_length_four() {
        let a = corpus::example_e4(Q);
        let r = is_subinvariant(&a, &a.span_of_units(&[2])).unwrap();
        assert!(r.subinvariant);
        let expected = vec![
            a.full_space(),
            a.span_of_units(&[0, 1, 2]),
            a.span_of_units(&[0, 2]),
            a.span_of_units(&[2]),
        ];
        assert_eq!(r.series.unwrap().terms(), expected.as_slice());
        assert_eq!(r.closure_chain.len(), 3);
    }

    #[test]
    fn trivial_cases() {
        let a = corpus::example_e4(Q);
        let r = is_subinvariant(&a, &a.full_space()).unwrap();
        assert_eq!(r.series.unwrap().len(), 1);
        let r = is_subinvariant(&a, &a.zero_space()).unwrap();
        assert!(r.subinvariant);
        let r = is_subinvariant(&a, &a.span_of_units(&[2, 3])).unwrap();
        assert!(!r.subinvariant);
        assert_eq!(r.counterwitness.unwrap(), a.full_space());
        let not_sub = a.span(&[Vector::from_ints(Q, &[0, 1, 0, 1])]).unwrap();
        assert_eq!(is_subinvariant(&a, &not_sub).unwrap_err(), Error::NotASubalgebra);
    }

    #[test]
    fn char_p_chain() {
        let p3 = corpus::char_p_parts(3).unwrap();
        let r = is_subinvariant(&p3.algebra, &p3.l_tensor_n).unwrap();
        assert!(r.subinvariant);
        assert_eq!(
            r.series.unwrap().terms(),
            &[p3.algebra.full_space(), p3.m.clone(), p3.l_tensor_n.clone()]
        );
    }

    #[test]
    fn normal_series_rejects_bad_chains() {
        let a = corpus::example_e4(Q);
        let z = a.span_of_units(&[2]);
        assert!(NormalSeries::new(&a, vec![a.full_space(), z.clone()]).is_err());
        assert!(NormalSeries::new(&a, vec![z]).is_err());
        assert!(NormalSeries::new(&a, vec![]).is_err());
    }

    #[test]
    fn joins() {
        let a = corpus::example_e4(Q);
        let z = a.span_of_units(&[2]);
        let x = a.span_of_units(&[0]);
        assert_eq!(join_subinvariant(&a, &z, &z).unwrap(), z);
        assert_eq!(join_subinvariant(&a, &z, &a.zero_space()).unwrap(), z);
        assert_eq!(join_subinvariant(&a, &z, &x).unwrap(), a.span_of_units(&[0, 2]));
        assert_eq!(
            join_subinvariant(&a, &z, &a.span_of_units(&[3])).unwrap_err(),
            Error::NotSubinvariantInput
        );
    }

    #[test]
    fn bar_closures() {
        let a = corpus::example_e4(Q);
        let t = a.unit(3);
        let z = a.span_of_units(&[2]);
        let x = a.span_of_units(&[0]);
        assert_eq!(bar_closure(&a, &t, &z).unwrap(), z);
        assert_eq!(bar_closure(&a, &t, &x).unwrap(), x);
        assert_eq!(bar_closure(&a, &a.unit(2), &z).unwrap(), z);
        let y = a.span_of_units(&[1]);
        assert_eq!(bar_closure(&a, &a.unit(2), &y).unwrap(), a.span_of_units(&[0, 1]));
        assert_eq!(orbit_span(&a, &a.unit(2), &y).unwrap(), a.span_of_units(&[0, 1]));
    }

    #[test]
    fn orbit_span_can_miss_products() {
        // [x,y] = z, [x,z] = w: the orbit of span{x} under y is span{x,z}, not closed.
        let mut b = crate::algebra::TableBuilder::new(Q, 4);
        b.add_int(0, 1, 2, 1).add_int(1, 0, 2, -1).add_int(0, 2, 3, 1).add_int(2, 0, 3, -1);
        let a = b.build("filiform4").unwrap();
        let x = a.span_of_units(&[0]);
        assert_eq!(orbit_span(&a, &a.unit(1), &x).unwrap(), a.span_of_units(&[0, 2]));
        assert_eq!(bar_closure(&a, &a.unit(1), &x).unwrap(), a.span_of_units(&[0, 2, 3]));
    }

    #[test]
    fn underline_examples() {
        let f5 = Field::prime(5).unwrap();
        let a = corpus::example_e4(f5);
        let u = underline_b(&a, &a.span_of_units(&[2, 3])).unwrap();
        assert_eq!(u.span, a.span_of_units(&[2]));
        assert!(u.ideal_of_b);
        assert!(!u.ideal_of_a);
        assert_eq!(underline_b(&a, &a.full_space()).unwrap().span, a.full_space());
        let ideal = a.span_of_units(&[0, 1]);
        assert_eq!(underline_b(&a, &ideal).unwrap().span, ideal);
        let q = corpus::example_e4(Q);
        assert!(matches!(underline_b(&q, &q.full_space()), Err(Error::UnsupportedField(_))));
    }
}
