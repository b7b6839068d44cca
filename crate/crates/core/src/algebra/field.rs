use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Scalar};

/// Largest prime accepted for `F_p`. Root finding over `F_p` scans every
/// element, so the modulus has to stay small.
pub const MAX_PRIME: u64 = 65_521;

/// The residue field `k`: either `Q` or a small prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    Rational,
    Prime(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidPrime(p));
        }
        Ok(BaseField::Prime(p))
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rational => 0,
            BaseField::Prime(p) => p,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, BaseField::Prime(_))
    }

    /// All elements of a finite field in canonical order; `None` for `Q`.
    pub fn elements(self) -> Option<Vec<ResidueScalar>> {
        match self {
            BaseField::Rational => None,
            BaseField::Prime(p) => Some(
                (0..p)
                    .map(|value| ResidueScalar::Prime { value, modulus: p })
                    .collect(),
            ),
        }
    }

    pub fn rational(self, value: BigRational) -> ResidueScalar {
        match self {
            BaseField::Rational => ResidueScalar::Rational(value),
            BaseField::Prime(p) => {
                let num = reduce_bigint(value.numer(), p);
                let den = reduce_bigint(value.denom(), p);
                // callers that can hit a zero denominator go through `try_rational`
                let inv = inverse_mod(den, p).expect("denominator divisible by the characteristic");
                ResidueScalar::Prime {
                    value: mul_mod(num, inv, p),
                    modulus: p,
                }
            }
        }
    }

    pub fn try_rational(self, value: &BigRational) -> Option<ResidueScalar> {
        match self {
            BaseField::Rational => Some(ResidueScalar::Rational(value.clone())),
            BaseField::Prime(p) => {
                let den = reduce_bigint(value.denom(), p);
                let inv = inverse_mod(den, p)?;
                Some(ResidueScalar::Prime {
                    value: mul_mod(reduce_bigint(value.numer(), p), inv, p),
                    modulus: p,
                })
            }
        }
    }

    pub fn integer(self, n: &BigInt) -> ResidueScalar {
        match self {
            BaseField::Rational => ResidueScalar::Rational(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => ResidueScalar::Prime {
                value: reduce_bigint(n, p),
                modulus: p,
            },
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "q"),
            BaseField::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An element of the residue field.
///
/// `Q` values are kept in lowest terms with positive denominator (the
/// `BigRational` invariant); `F_p` values are canonical representatives in
/// `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidueScalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl ResidueScalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ResidueScalar::Rational(q) => Some(q),
            ResidueScalar::Prime { .. } => None,
        }
    }

    pub fn field(&self) -> BaseField {
        match self {
            ResidueScalar::Rational(_) => BaseField::Rational,
            ResidueScalar::Prime { modulus, .. } => BaseField::Prime(*modulus),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ResidueScalar::Rational(BigRational::new(num.into(), den.into()))
    }

    fn prime_parts(&self, other: &Self) -> (u64, u64, u64) {
        match (self, other) {
            (
                ResidueScalar::Prime { value: a, modulus: p },
                ResidueScalar::Prime { value: b, modulus: q },
            ) if p == q => (*a, *b, *p),
            _ => panic!("mixed residue fields: {self:?} and {other:?}"),
        }
    }
}

impl Scalar for ResidueScalar {
    fn base_field(&self) -> BaseField {
        match self {
            ResidueScalar::Rational(_) => BaseField::Rational,
            ResidueScalar::Prime { modulus, .. } => BaseField::Prime(*modulus),
        }
    }

    fn zero(field: BaseField) -> Self {
        Self::from_i64(field, 0)
    }

    fn one(field: BaseField) -> Self {
        Self::from_i64(field, 1)
    }

    fn from_i64(field: BaseField, n: i64) -> Self {
        match field {
            BaseField::Rational => ResidueScalar::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => ResidueScalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            ResidueScalar::Rational(q) => q.is_zero(),
            ResidueScalar::Prime { value, .. } => *value == 0,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ResidueScalar::Rational(a), ResidueScalar::Rational(b)) => ResidueScalar::Rational(a + b),
            _ => {
                let (a, b, p) = self.prime_parts(rhs);
                ResidueScalar::Prime { value: (a + b) % p, modulus: p }
            }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ResidueScalar::Rational(a), ResidueScalar::Rational(b)) => ResidueScalar::Rational(a - b),
            _ => {
                let (a, b, p) = self.prime_parts(rhs);
                ResidueScalar::Prime { value: (a + p - b) % p, modulus: p }
            }
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ResidueScalar::Rational(a), ResidueScalar::Rational(b)) => ResidueScalar::Rational(a * b),
            _ => {
                let (a, b, p) = self.prime_parts(rhs);
                ResidueScalar::Prime { value: mul_mod(a, b, p), modulus: p }
            }
        }
    }

    fn neg(&self) -> Self {
        match self {
            ResidueScalar::Rational(a) => ResidueScalar::Rational(-a),
            ResidueScalar::Prime { value, modulus } => ResidueScalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            ResidueScalar::Rational(a) if a.is_zero() => None,
            ResidueScalar::Rational(a) => Some(ResidueScalar::Rational(a.recip())),
            ResidueScalar::Prime { value, modulus } => inverse_mod(*value, *modulus).map(|v| {
                ResidueScalar::Prime { value: v, modulus: *modulus }
            }),
        }
    }
}

impl PartialOrd for ResidueScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only to make outputs deterministic: by value for `Q`,
/// by representative for `F_p`.
impl Ord for ResidueScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ResidueScalar::Rational(a), ResidueScalar::Rational(b)) => a.cmp(b),
            (
                ResidueScalar::Prime { value: a, modulus: p },
                ResidueScalar::Prime { value: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
            (ResidueScalar::Rational(_), ResidueScalar::Prime { .. }) => Ordering::Less,
            (ResidueScalar::Prime { .. }, ResidueScalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ResidueScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueScalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ResidueScalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // p ≤ MAX_PRIME < 2^16, so the product fits
    a * b % p
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn inverse_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i64) as u64)
}
