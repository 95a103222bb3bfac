//! Values recomputed by brute force with plain integer arithmetic, independent
//! of the library's linear algebra.

use leibniz_core::{corpus, Field, LeibnizAlgebra, Scalar};

/// Structure constants as residues: `c[i][j][k]`.
fn constants(a: &LeibnizAlgebra) -> (u64, Vec<Vec<Vec<u64>>>) {
    let p = a.field().characteristic();
    let n = a.dim();
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    a.basis_product(i, j)
                        .coords()
                        .iter()
                        .map(|s| match s {
                            Scalar::Residue { value, .. } => *value,
                            Scalar::Rational(_) => panic!("residues expected"),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    (p, c)
}

/// Count matrices `D` (column `j` is `D e_j`) with `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)`.
fn count_derivations(a: &LeibnizAlgebra) -> u64 {
    let (p, c) = constants(a);
    let n = a.dim();
    let total = p.pow((n * n) as u32);
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let s = x[i] * y[j] % p;
                if s != 0 {
                    for k in 0..n {
                        out[k] = (out[k] + s * c[i][j][k]) % p;
                    }
                }
            }
        }
        out
    };
    let mut count = 0;
    for code in 0..total {
        let mut rest = code;
        let mut cols = vec![vec![0u64; n]; n];
        for col in cols.iter_mut() {
            for entry in col.iter_mut() {
                *entry = rest % p;
                rest /= p;
            }
        }
        let apply = |v: &[u64]| -> Vec<u64> {
            let mut out = vec![0; n];
            for (j, vj) in v.iter().enumerate() {
                for k in 0..n {
                    out[k] = (out[k] + vj * cols[j][k]) % p;
                }
            }
            out
        };
        let unit = |i: usize| -> Vec<u64> { (0..n).map(|k| u64::from(k == i)).collect() };
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = apply(&c[i][j]);
                let a1 = mul(&cols[i], &unit(j));
                let a2 = mul(&unit(i), &cols[j]);
                lhs.iter().zip(a1.iter().zip(&a2)).all(|(l, (x, y))| *l == (x + y) % p)
            })
        });
        count += u64::from(ok);
    }
    count
}

#[test]
fn derivation_counts_match_brute_force() {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let cases = [
        corpus::aff1(f3),
        corpus::sl2(f3),
        corpus::heisenberg(f2),
        corpus::heisenberg(f3),
        corpus::example_e4(f2),
        corpus::abelian(f2, 2),
    ];
    for a in cases {
        let dim = leibniz_core::derivations::derivation_space(&a).dim();
        let p = a.field().characteristic();
        assert_eq!(count_derivations(&a), p.pow(dim as u32), "{} over {}", a.name(), a.field());
    }
}

#[test]
fn rational_derivation_dims() {
    // Over F_5 these tables reduce without collapsing, so the rational
    // dimension must match the brute-force count there.
    let q = Field::Rationals;
    let f5 = Field::prime(5).unwrap();
    for a in [corpus::aff1(q), corpus::heisenberg(q)] {
        let dim = leibniz_core::derivations::derivation_space(&a).dim();
        let reduced = a.reduce_mod(5).unwrap();
        assert_eq!(reduced.field(), f5);
        assert_eq!(count_derivations(&reduced), 5u64.pow(dim as u32), "{}", a.name());
    }
}

#[test]
fn seeded_draws_satisfy_the_identity() {
    // 1000 draws over the rationals, each re-checked triple by triple with `mul`.
    let entries = corpus::seeded_corpus(Field::Rationals, 1000, 99, 2..=5).unwrap();
    for e in &entries {
        let a = &e.algebra;
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (a.unit(i), a.unit(j), a.unit(k));
                    let lhs = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
                    let rhs = a
                        .mul(&a.mul(&x, &y).unwrap(), &z)
                        .unwrap()
                        .add(&a.mul(&y, &a.mul(&x, &z).unwrap()).unwrap());
                    assert_eq!(lhs, rhs, "{} at ({i},{j},{k})", e.name);
                }
            }
        }
    }
}
