//! Exact scalars over the rationals and prime fields.
//!
//! A [`Scalar`] always carries enough information to know which field it
//! lives in. Mixing fields through the operator traits is a programming
//! error and panics; the `checked_*` methods and [`field_arith`] report it
//! as [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus: residues are multiplied as `u64` without overflow.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

/// Field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field F_p; rejects composites and moduli that would overflow.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_char_zero(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// Residue `v mod p` without sign handling; only meaningful over F_p.
    pub fn from_u64(&self, v: u64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue { value: v % p, p },
        }
    }

    /// Image of an exact rational in this field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
                let den = q.denom().mod_floor(&pb).to_u64().expect("residue fits");
                if den == 0 {
                    return Err(Error::DenominatorDivisibleByP {
                        text: q.to_string(),
                        p,
                    });
                }
                Ok(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    p,
                })
            }
        }
    }

    /// All field elements in increasing residue order. Panics over the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + Clone {
        let p = self.order().expect("finite field required");
        (0..p).map(move |value| Scalar::Residue { value, p })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Normalized fraction (`num_rational` keeps gcd = 1 and a positive denominator).
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue { value: u64, p: u64 },
}

/// Binary operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on two scalars.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Parse `[-]digits[/digits]` into `field`.
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        let q = parse_rational(text)?;
        match field {
            Field::Rationals => Ok(Scalar::Rational(q)),
            Field::Prime(p) => {
                // The grammar's denominator is checked before canonicalization:
                // "3/3" over F_3 names no residue.
                let den_text = text.trim().split('/').nth(1);
                if let Some(d) = den_text {
                    let d: BigInt = d.parse().map_err(|_| Error::Parse(text.to_string()))?;
                    if (d % BigInt::from(p)).is_zero() {
                        return Err(Error::DenominatorDivisibleByP {
                            text: text.to_string(),
                            p,
                        });
                    }
                }
                field.from_rational(&q)
            }
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: other.field().to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        let inv = other.inv()?;
        Ok(self * &inv)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    /// `self -= a * b`, the elimination kernel.
    pub fn sub_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                *s -= x * y;
            }
            (Scalar::Residue { value, p }, Scalar::Residue { value: x, .. }, Scalar::Residue { value: y, .. }) => {
                let prod = mul_mod(*x, *y, *p);
                *value = (*value + *p - prod) % *p;
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    /// Exact rational value when over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Representative integer when the value is integral (any residue, or an integer rational).
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.numer().clone()),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(BigInt::from(*value)),
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let err = || Error::Parse(format!("invalid scalar {text:?}"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let mut parts = body.splitn(2, '/');
    let num_s = parts.next().ok_or_else(err)?;
    let den_s = parts.next();
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num_s) || den_s.is_some_and(|d| !digits(d)) {
        return Err(err());
    }
    let mut num: BigInt = num_s.parse().map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| match (a, b) {
    (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
    (Scalar::Residue { value: x, p }, Scalar::Residue { value: y, p: q }) if p == q => Scalar::Residue {
        value: (x + y) % p,
        p: *p,
    },
    _ => panic!("field mismatch in scalar arithmetic"),
});

binop!(Sub, sub, |a, b| match (a, b) {
    (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
    (Scalar::Residue { value: x, p }, Scalar::Residue { value: y, p: q }) if p == q => Scalar::Residue {
        value: (x + p - y) % p,
        p: *p,
    },
    _ => panic!("field mismatch in scalar arithmetic"),
});

binop!(Mul, mul, |a, b| match (a, b) {
    (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
    (Scalar::Residue { value: x, p }, Scalar::Residue { value: y, p: q }) if p == q => Scalar::Residue {
        value: mul_mod(*x, *y, *p),
        p: *p,
    },
    _ => panic!("field mismatch in scalar arithmetic"),
});

binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("scalar division failed"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => *x += y,
            (Scalar::Residue { value, p }, Scalar::Residue { value: y, .. }) => *value = (*value + y) % *p,
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => *x -= y,
            (Scalar::Residue { value, p }, Scalar::Residue { value: y, .. }) => *value = (*value + *p - y) % *p,
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, p: pa }, Scalar::Residue { value: b, p: pb }) => (pa, a).cmp(&(pb, b)),
            (Scalar::Rational(_), Scalar::Residue { .. }) => std::cmp::Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sign of a rational scalar; residues report `0` or `1`.
pub fn signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Rational(q) if q.is_negative() => -1,
        Scalar::Rational(q) if q.is_zero() => 0,
        Scalar::Rational(_) => 1,
        Scalar::Residue { value, .. } => (*value != 0) as i32,
    }
}
