//! Exact coefficient arithmetic: the residue field `k` (`Q` or `F_p`),
//! univariate polynomials, and the valued field `K = F(T)` with its `T`-adic
//! valuation.

mod field;
mod poly;
mod roots;
mod valued;

use std::fmt;
use std::hash::Hash;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use field::inverse_mod;
pub use field::{BaseField, ResidueScalar, MAX_PRIME};
pub use poly::{poly_gcd, resultant, Poly};
pub use roots::{radical, rational_roots, RationalRoots};
pub use valued::ValuedScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element has negative valuation; use the projective reduction instead")]
    NegativeValuation,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime (must be prime and at most {max})", max = MAX_PRIME)]
    InvalidPrime(u64),
}

/// Field operations shared by `k` and `K`.
///
/// Elements carry their base field so that zero polynomials and constants
/// can be built without a separate context object.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug {
    fn base_field(&self) -> BaseField;
    fn zero(field: BaseField) -> Self;
    fn one(field: BaseField) -> Self;
    fn from_i64(field: BaseField, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(self.base_field())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.base_field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Integer or `+∞`; the codomain of the valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtInt::Infinity
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a + b),
            _ => ExtInt::Infinity,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            ExtInt::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(ExtInt::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(ExtInt::Infinity),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// A point of `P¹` over some field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1<T> {
    Finite(T),
    Infinity,
}

impl<T> P1<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            P1::Finite(x) => Some(x),
            P1::Infinity => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for P1<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(x) => write!(f, "{x}"),
            P1::Infinity => write!(f, "inf"),
        }
    }
}
