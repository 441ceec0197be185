//! Coefficient rings and canonical scalar arithmetic.
//!
//! Every scalar is carried as a [`BigRational`]; the [`Ring`] decides what the
//! canonical representative is. Over `Z` the denominator is always one, over
//! `F_p` the value is an integer in `[0, p)`, over `Q` it is a fraction in
//! lowest terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("unknown ring `{0}` (expected Z, Q or F_p)")]
    Unknown(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: Ring },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(RingError::CompositeModulus(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Characteristic of the ring (0 for `Z` and `Q`).
    pub fn characteristic(self) -> u64 {
        match self {
            Ring::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(self, n: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(n))
    }

    /// Canonical representative of `x`.
    ///
    /// Panics over `Z` if `x` is not an integer; callers that accept
    /// user input go through [`Ring::try_reduce`].
    pub fn reduce(self, x: Scalar) -> Scalar {
        self.try_reduce(x).expect("scalar outside coefficient ring")
    }

    pub fn try_reduce(self, x: Scalar) -> Result<Scalar, RingError> {
        match self {
            Ring::Rationals => Ok(x),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x)
                } else {
                    Err(RingError::NotInRing { value: x.to_string(), ring: self })
                }
            }
            Ring::PrimeField(p) => {
                let p = BigInt::from(p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(RingError::NotInRing { value: x.to_string(), ring: self });
                }
                let inv = mod_inverse(&den, &p);
                Ok(Scalar::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inverse(self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                if a.is_one() || (-a).is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            _ => Some(self.reduce(a.recip())),
        }
    }

    pub fn is_unit(self, a: &Scalar) -> bool {
        self.inverse(a).is_some()
    }

    /// Extended gcd `(g, s, t)` with `g = s·a + t·b`, `g` a canonical associate.
    ///
    /// Over a field the gcd of anything nonzero is one.
    pub fn xgcd(self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let e = a.numer().extended_gcd(b.numer());
                let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    s = -s;
                    t = -t;
                }
                (Scalar::from_integer(g), Scalar::from_integer(s), Scalar::from_integer(t))
            }
            _ => {
                if !a.is_zero() {
                    (self.one(), self.inverse(a).unwrap(), self.zero())
                } else if !b.is_zero() {
                    (self.one(), self.zero(), self.inverse(b).unwrap())
                } else {
                    (self.zero(), self.one(), self.zero())
                }
            }
        }
    }

    /// Exact quotient `a / b` where `b` divides `a`.
    pub fn exact_div(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Ring::Integers => Scalar::from_integer(a.numer() / b.numer()),
            _ => self.mul(a, &self.inverse(b).expect("division by zero")),
        }
    }

    /// `Some(a / b)` when the quotient lies in the ring.
    pub fn checked_div(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| Scalar::from_integer(q))
            }
            _ => Some(self.exact_div(a, b)),
        }
    }

    /// Quotient used to reduce `a` modulo a pivot `b`: floor division over
    /// `Z` (remainder in `[0, |b|)` for positive pivots), exact over fields.
    pub fn reduction_quotient(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Ring::Integers => Scalar::from_integer(a.numer().div_floor(b.numer())),
            _ => self.exact_div(a, b),
        }
    }

    /// Unit `u` such that `u·a` is the canonical associate of `a`.
    pub fn normalizer(self, a: &Scalar) -> Scalar {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.inverse(a).unwrap_or_else(Scalar::one),
        }
    }
}

pub fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            other => {
                let digits = other
                    .strip_prefix("F_")
                    .or_else(|| other.strip_prefix("F"))
                    .ok_or_else(|| RingError::Unknown(other.to_string()))?;
                let p: u64 = digits.parse().map_err(|_| RingError::Unknown(other.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Plain decimal (or `a/b`) rendering of a scalar.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde adapter writing a scalar matrix as rows of `a` / `a/b` strings.
pub mod scalar_matrix {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_scalar, Scalar};

    pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(rows.iter().map(|r| r.iter().map(format_scalar).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(deserializer)?;
        raw.iter()
            .map(|r| r.iter().map(|x| x.parse::<Scalar>().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}


/// Serde adapter writing big integers as decimal strings.
pub mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}
