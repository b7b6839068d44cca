//! Rational maps over `K = F(T)` in normal form, their reduction, and
//! Möbius conjugation.

mod gcd;
mod mobius;
mod reduced;
mod reduction;

use std::fmt;

use crate::algebra::{poly_gcd, BaseField, Poly, ResidueScalar, Scalar, ValuedScalar, P1};
use crate::error::{Error, Result};
use crate::expr::format_fraction;

pub(crate) use gcd::kpoly_gcd;
pub use mobius::{conjugate, normalize_conjugacy, Mobius, NormalizedConjugacy};
pub use reduced::ReducedMap;
pub use reduction::{bad_classes, reduce, Classification, ReductionReport};

pub type KPoly = Poly<ValuedScalar>;
pub type ResPoly = Poly<ResidueScalar>;

/// `φ = f/g` with `f, g ∈ F[T][z]` coprime, jointly primitive over `F[T]`
/// (so the minimum coefficient valuation is 0), and scaled so the leading
/// `T`-coefficient of the leading `z`-coefficient of `g` is 1.
///
/// This normal form is unique, so structural equality is map equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMap {
    f: KPoly,
    g: KPoly,
}

/// Cancels common factors and brings `f_raw/g_raw` into normal form.
pub fn normalize(f_raw: &KPoly, g_raw: &KPoly) -> Result<RatMap> {
    if g_raw.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if f_raw.is_zero() {
        return Err(Error::ConstantMap);
    }
    let h = kpoly_gcd(f_raw, g_raw)?;
    let (f, g) = if h.is_constant() {
        (f_raw.clone(), g_raw.clone())
    } else {
        (f_raw.exact_div(&h)?, g_raw.exact_div(&h)?)
    };
    if f.is_constant() && g.is_constant() {
        return Err(Error::ConstantMap);
    }
    Ok(primitive_pair(f, g))
}

/// Clears `T`-denominators, removes the `F[T]` content and fixes the unit.
/// The inputs must already be coprime.
fn primitive_pair(f: KPoly, g: KPoly) -> RatMap {
    let field = f.field();
    let coeffs = || f.coeffs().iter().chain(g.coeffs());
    let mut den = ResPoly::one(field);
    for c in coeffs() {
        if !c.is_polynomial() {
            let gcd = poly_gcd(&den, c.denom()).expect("nonzero denominators");
            den = (&den * &c.denom().exact_div(&gcd).expect("gcd divides")).monic();
        }
    }
    let scale_den = ValuedScalar::from_poly(den);
    let clear = |p: &KPoly| -> Vec<ResPoly> {
        p.coeffs()
            .iter()
            .map(|c| c.mul(&scale_den).numer().clone())
            .collect()
    };
    let (mut fc, mut gc) = (clear(&f), clear(&g));
    let mut content = ResPoly::zero(field);
    for c in fc.iter().chain(gc.iter()) {
        if !c.is_zero() {
            content = if content.is_zero() { c.monic() } else { poly_gcd(&content, c).expect("nonzero") };
            if content.is_constant() {
                break;
            }
        }
    }
    let unit = gc.last().expect("g nonzero").leading();
    let unit_inv = unit.inv().expect("nonzero unit");
    let fix = |cs: &mut Vec<ResPoly>| {
        for c in cs.iter_mut() {
            let reduced = if content.is_constant() { c.clone() } else { c.exact_div(&content).expect("content divides") };
            *c = reduced.scale(&unit_inv);
        }
    };
    fix(&mut fc);
    fix(&mut gc);
    let wrap = |cs: Vec<ResPoly>| KPoly::new(field, cs.into_iter().map(ValuedScalar::from_poly).collect());
    RatMap { f: wrap(fc), g: wrap(gc) }
}

impl RatMap {
    /// Same as [`normalize`].
    pub fn new(f: KPoly, g: KPoly) -> Result<Self> {
        normalize(&f, &g)
    }

    /// A polynomial map.
    pub fn polynomial(f: KPoly) -> Result<Self> {
        let field = f.field();
        normalize(&f, &KPoly::one(field))
    }

    pub fn identity(field: BaseField) -> Self {
        RatMap { f: KPoly::var(field), g: KPoly::one(field) }
    }

    pub fn f(&self) -> &KPoly {
        &self.f
    }

    pub fn g(&self) -> &KPoly {
        &self.g
    }

    pub fn field(&self) -> BaseField {
        self.f.field()
    }

    pub fn degree(&self) -> usize {
        self.f.deg().max(self.g.deg())
    }

    /// Evaluate on `P¹(K)`.
    pub fn eval(&self, x: &P1<ValuedScalar>) -> P1<ValuedScalar> {
        match x {
            P1::Finite(x) => {
                let gx = self.g.eval(x);
                match self.f.eval(x).div(&gx) {
                    Some(y) => P1::Finite(y),
                    None => P1::Infinity,
                }
            }
            P1::Infinity => {
                let (df, dg) = (self.f.deg(), self.g.deg());
                if df > dg {
                    P1::Infinity
                } else if df == dg {
                    P1::Finite(self.f.leading().div(&self.g.leading()).expect("nonzero"))
                } else {
                    P1::Finite(ValuedScalar::zero(self.field()))
                }
            }
        }
    }

    /// `self ∘ inner`, computed on homogeneous forms so no gcd is needed.
    pub fn compose(&self, inner: &RatMap) -> RatMap {
        let d = self.degree();
        let (nf, ng) = substitute_forms(&self.f, &self.g, d, &inner.f, &inner.g);
        primitive_pair(nf, ng)
    }

    /// `z ↦ 1/φ(1/z)`, the map seen in the coordinate at infinity.
    pub fn flip(&self) -> RatMap {
        let d = self.degree();
        primitive_pair(self.g.reverse(d), self.f.reverse(d))
    }

    /// `n`-fold composition, refusing degrees above `cap`.
    pub fn iterate_with_cap(&self, n: u32, cap: usize) -> Result<RatMap> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate needs n >= 1".into()));
        }
        let degree = (self.degree() as u128).checked_pow(n).unwrap_or(u128::MAX);
        if degree > cap as u128 {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// `(f′g − fg′, g²)` after cancelling common factors; the denominator
    /// is monic in `z`.
    pub fn derivative(&self) -> (KPoly, KPoly) {
        let num = &(&self.f.derivative() * &self.g) - &(&self.f * &self.g.derivative());
        let den = &self.g * &self.g;
        if num.is_zero() {
            return (num, KPoly::one(self.field()));
        }
        let h = kpoly_gcd(&num, &den).expect("den nonzero");
        let (num, den) = if h.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&h).unwrap(), den.exact_div(&h).unwrap())
        };
        let lc = den.leading().inv().expect("nonzero");
        (num.scale(&lc), den.scale(&lc))
    }
}

/// `Σ aᵢ F^i G^{d−i}` and `Σ bᵢ F^i G^{d−i}` for `f = Σ aᵢ zⁱ`, `g = Σ bᵢ zⁱ`.
pub(crate) fn substitute_forms<C: Scalar>(
    f: &Poly<C>,
    g: &Poly<C>,
    d: usize,
    big_f: &Poly<C>,
    big_g: &Poly<C>,
) -> (Poly<C>, Poly<C>) {
    let field = f.field();
    let mut fp = vec![Poly::one(field)];
    let mut gp = vec![Poly::one(field)];
    for i in 1..=d {
        fp.push(&fp[i - 1] * big_f);
        gp.push(&gp[i - 1] * big_g);
    }
    let combine = |p: &Poly<C>| {
        let mut acc = Poly::zero(field);
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&fp[i] * &gp[d - i]).scale(c);
            }
        }
        acc
    };
    (combine(f), combine(g))
}

/// `iterate` with the degree cap taken from the environment.
pub fn iterate(phi: &RatMap, n: u32) -> Result<RatMap> {
    phi.iterate_with_cap(n, crate::limits::degree_cap())
}

pub fn derivative(phi: &RatMap) -> (KPoly, KPoly) {
    phi.derivative()
}

impl fmt::Display for RatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fraction(&self.f, &self.g))
    }
}
