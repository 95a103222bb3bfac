//! JSON file format for algebras and the `--subspace` flag syntax.
//!
//! ```json
//! {"name": "E4", "field": {"kind": "Q"}, "dim": 4,
//!  "products": [{"i": 4, "j": 1, "out": [[1, "1"]]}]}
//! ```
//!
//! Indices are 1-based, omitted products are zero and coefficients are strings
//! in the scalar grammar `[-]digits[/digits]`.

use std::fs;
use std::path::Path;

use leibniz_core::{Error, Field, LeibnizAlgebra, Result, Scalar, Subspace, TableBuilder, Vector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

impl FieldSpec {
    pub fn to_field(self) -> Result<Field> {
        match self {
            FieldSpec::Q => Ok(Field::Rationals),
            FieldSpec::Fp { p } => Field::prime(p),
        }
    }

    pub fn of(field: Field) -> FieldSpec {
        match field {
            Field::Rationals => FieldSpec::Q,
            Field::Prime(p) => FieldSpec::Fp { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

fn check_index(index: usize, dim: usize) -> Result<usize> {
    if index == 0 || index > dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    Ok(index - 1)
}

impl AlgebraFile {
    /// Build and validate. Repeated `(i, j)` entries add up.
    pub fn to_algebra(&self) -> Result<LeibnizAlgebra> {
        let field = self.field.to_field()?;
        let mut b = TableBuilder::new(field, self.dim);
        for entry in &self.products {
            let i = check_index(entry.i, self.dim)?;
            let j = check_index(entry.j, self.dim)?;
            for (k, coeff) in &entry.out {
                let k = check_index(*k, self.dim)?;
                b.add(i, j, k, Scalar::parse(coeff, field)?)?;
            }
        }
        b.build(self.name.clone())
    }

    pub fn from_algebra(a: &LeibnizAlgebra) -> AlgebraFile {
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let out: Vec<(usize, String)> = a
                    .basis_product(i, j)
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, c.to_string()))
                    .collect();
                if !out.is_empty() {
                    products.push(ProductEntry { i: i + 1, j: j + 1, out });
                }
            }
        }
        AlgebraFile {
            name: a.name().to_string(),
            field: FieldSpec::of(a.field()),
            dim: n,
            products,
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.to_algebra()
}

pub fn read_algebra(path: &Path) -> Result<LeibnizAlgebra> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_algebra(&text)
}

pub fn write_algebra(a: &LeibnizAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("plain data serializes")
}

/// Parse `"c1,c2,...;c1,c2,..."` into the span of the listed vectors.
/// An empty string is the zero subspace.
pub fn parse_subspace(text: &str, a: &LeibnizAlgebra) -> Result<Subspace> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(a.zero_space());
    }
    let vs = text
        .split(';')
        .map(|v| parse_vector(v, a.field(), a.dim()))
        .collect::<Result<Vec<_>>>()?;
    a.span(&vs)
}

pub fn parse_vector(text: &str, field: Field, dim: usize) -> Result<Vector> {
    let coords = text
        .split(',')
        .map(|c| Scalar::parse(c.trim(), field))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    Vector::new(field, coords)
}

/// Inverse of the report encoding of a subspace: a list of echelon rows of
/// coefficient strings.
pub fn subspace_from_rows(rows: &[Vec<String>], field: Field, dim: usize) -> Result<Subspace> {
    let vs = rows
        .iter()
        .map(|r| parse_vector(&r.join(","), field, dim))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_vectors(field, dim, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::corpus;

    #[test]
    fn round_trip_preserves_table() {
        for a in [corpus::example_e4(Field::Rationals), corpus::example_char_p(3).unwrap()] {
            let back = parse_algebra(&write_algebra(&a)).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn index_and_identity_errors() {
        let bad = r#"{"name":"x","field":{"kind":"Q"},"dim":4,"products":[{"i":5,"j":1,"out":[[1,"1"]]}]}"#;
        assert_eq!(parse_algebra(bad).unwrap_err(), Error::IndexOutOfRange { index: 5, dim: 4 });
        // e1 e1 = e2 and e2 e1 = e1 gives e1(e1e1) = e1 e2 = 0 but (e1e1)e1 = e1.
        let bad = r#"{"name":"x","field":{"kind":"Q"},"dim":2,"products":[{"i":1,"j":1,"out":[[2,"1"]]},{"i":2,"j":1,"out":[[1,"1"]]}]}"#;
        assert!(matches!(parse_algebra(bad), Err(Error::LeibnizIdentityViolation { .. })));
        assert!(matches!(parse_algebra("{"), Err(Error::Parse(_))));
        let bad = r#"{"name":"x","field":{"kind":"Fp","p":4},"dim":1}"#;
        assert_eq!(parse_algebra(bad).unwrap_err(), Error::InvalidPrime(4));
    }

    #[test]
    fn subspace_flag() {
        let a = corpus::example_e4(Field::Rationals);
        let s = parse_subspace("0,0,1,0", &a).unwrap();
        assert_eq!(s, a.span_of_units(&[2]));
        let s = parse_subspace("1,0,0,0; 0,1/2,0,0", &a).unwrap();
        assert_eq!(s, a.span_of_units(&[0, 1]));
        assert!(matches!(parse_subspace("1,0", &a), Err(Error::DimensionMismatch { .. })));
        let rows: Vec<Vec<String>> = serde_json::from_value(serde_json::to_value(&s).unwrap()).unwrap();
        assert_eq!(subspace_from_rows(&rows, a.field(), 4).unwrap(), s);
    }
}
