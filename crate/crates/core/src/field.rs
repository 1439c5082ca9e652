//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! Arithmetic goes through [`Field`] so a matrix only ever mixes scalars of
//! one field. Rationals are kept in lowest terms with a positive denominator
//! (`BigRational` normalizes on construction); prime-field values are reduced
//! representatives in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// A prime field, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Field, ParseError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ParseError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Prime(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(_) => Scalar::Prime(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime(reduce_i128(v as i128, p)),
        }
    }

    /// Image of an arbitrary integer.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Prime(r.to_u64().expect("residue below modulus"))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Prime(v)) => v < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Prime(p), Scalar::Prime(x), Scalar::Prime(y)) => {
                Scalar::Prime(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Field::Prime(p), Scalar::Prime(x), Scalar::Prime(y)) => {
                Scalar::Prime(((*x as u128 + *p as u128 - *y as u128) % *p as u128) as u64)
            }
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Prime(p), Scalar::Prime(x), Scalar::Prime(y)) => {
                Scalar::Prime(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Prime(p), Scalar::Prime(x)) => Scalar::Prime(if *x == 0 { 0 } else { p - x }),
            _ => mixed(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Rational, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (Field::Prime(p), Scalar::Prime(x)) => Scalar::Prime(pow_mod(*x, p - 2, *p)),
            _ => mixed(),
        }
    }

    /// Parses a scalar: `"p"` or `"p/q"` over the rationals, an integer
    /// (reduced mod p) over a prime field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ParseError> {
        let text = text.trim();
        let bad = || ParseError::Scalar(text.to_string());
        match *self {
            Field::Rational => {
                let q = match text.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
                };
                Ok(Scalar::Rational(q))
            }
            Field::Prime(_) => {
                let v: BigInt = text.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&v))
            }
        }
    }

    pub fn tag(&self) -> FieldTag {
        match *self {
            Field::Rational => FieldTag::Name("q".to_string()),
            Field::Prime(p) => FieldTag::Prime { fp: p },
        }
    }
}

/// JSON form of a field: `"q"` or `{"fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldTag {
    Name(String),
    Prime { fp: u64 },
}

impl TryFrom<&FieldTag> for Field {
    type Error = ParseError;

    fn try_from(tag: &FieldTag) -> Result<Field, ParseError> {
        match tag {
            FieldTag::Name(n) if n.eq_ignore_ascii_case("q") => Ok(Field::Rational),
            FieldTag::Name(n) => Err(ParseError::FieldName(n.clone())),
            FieldTag::Prime { fp } => Field::prime(*fp),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
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
            Scalar::Prime(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn mixed() -> ! {
    panic!("scalar does not belong to the active field")
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
