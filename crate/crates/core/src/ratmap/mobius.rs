use std::fmt;

use crate::algebra::{BaseField, Scalar, ValuedScalar, P1};
use crate::error::{Error, Result};

use super::{normalize, reduce, KPoly, RatMap, ReductionReport};

/// `z ↦ (az + b)/(cz + d)` with `ad − bc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    a: ValuedScalar,
    b: ValuedScalar,
    c: ValuedScalar,
    d: ValuedScalar,
}

impl Mobius {
    pub fn new(a: ValuedScalar, b: ValuedScalar, c: ValuedScalar, d: ValuedScalar) -> Result<Self> {
        if a.mul(&d).sub(&b.mul(&c)).is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity(field: BaseField) -> Self {
        let (one, zero) = (ValuedScalar::one(field), ValuedScalar::zero(field));
        Mobius { a: one.clone(), b: zero.clone(), c: zero, d: one }
    }

    pub fn entries(&self) -> [&ValuedScalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> ValuedScalar {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    pub fn as_map(&self) -> RatMap {
        let field = self.a.field();
        let f = KPoly::new(field, vec![self.b.clone(), self.a.clone()]);
        let g = KPoly::new(field, vec![self.d.clone(), self.c.clone()]);
        normalize(&f, &g).expect("invertible Mobius map is a degree-one map")
    }

    pub fn apply(&self, x: &P1<ValuedScalar>) -> P1<ValuedScalar> {
        self.as_map().eval(x)
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// `g ∘ φ ∘ g⁻¹`.
pub fn conjugate(phi: &RatMap, g: &Mobius) -> Result<RatMap> {
    if g.determinant().is_zero() {
        return Err(Error::SingularMobius);
    }
    Ok(g.as_map().compose(&phi.compose(&g.inverse().as_map())))
}

/// Output of [`normalize_conjugacy`].
#[derive(Clone, Debug)]
pub struct NormalizedConjugacy {
    pub mobius: Mobius,
    pub conjugated: RatMap,
    pub report: ReductionReport,
}

/// The affine `g` with `g(φᴹ(a)) = 0`, `g(φᴹ⁺ᴺ(a)) = 1`, and the reduction
/// of `g ∘ φᴺ ∘ g⁻¹`.
pub fn normalize_conjugacy(phi: &RatMap, a: &P1<ValuedScalar>, m: u32, n: u32) -> Result<NormalizedConjugacy> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let mut x = a.clone();
    for _ in 0..m {
        x = phi.eval(&x);
    }
    let p0 = x.clone();
    for _ in 0..n {
        x = phi.eval(&x);
    }
    let (P1::Finite(p0), P1::Finite(p1)) = (p0, x) else {
        return Err(Error::InfiniteOrbitPoint);
    };
    let diff = p1.sub(&p0);
    let Some(inv) = diff.inv() else {
        return Err(Error::CoincidentPoints);
    };
    let field = phi.field();
    let g = Mobius::new(inv.clone(), p0.neg().mul(&inv), ValuedScalar::zero(field), ValuedScalar::one(field))?;
    let phi_n = phi.iterate_with_cap(n, crate::limits::degree_cap())?;
    let conjugated = conjugate(&phi_n, &g)?;
    let report = reduce(&conjugated);
    Ok(NormalizedConjugacy { mobius: g, conjugated, report })
}
