use crate::algebra::{poly_gcd, AlgebraError, BaseField, Scalar, ValuedScalar};

use super::{KPoly, ResPoly};

/// A polynomial in `z` over `F[T]`, lowest degree first.
type Bivariate = Vec<ResPoly>;

fn trim(mut p: Bivariate) -> Bivariate {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn clear_denominators(p: &KPoly) -> Bivariate {
    let field = p.field();
    let mut den = ResPoly::one(field);
    for c in p.coeffs() {
        if !c.is_polynomial() {
            let g = poly_gcd(&den, c.denom()).expect("nonzero denominators");
            den = &den * &c.denom().exact_div(&g).expect("gcd divides");
        }
    }
    let scale = ValuedScalar::from_poly(den);
    trim(p.coeffs().iter().map(|c| c.mul(&scale).numer().clone()).collect())
}

fn primitive_part(p: Bivariate) -> Bivariate {
    let mut content: Option<ResPoly> = None;
    for c in p.iter().filter(|c| !c.is_zero()) {
        let next = match &content {
            None => c.monic(),
            Some(g) => poly_gcd(g, c).expect("nonzero"),
        };
        let done = next.is_constant();
        content = Some(next);
        if done {
            break;
        }
    }
    match content {
        Some(g) if !g.is_constant() => p.iter().map(|c| c.exact_div(&g).expect("content divides")).collect(),
        _ => p,
    }
}

/// Pseudo-remainder of `a` by `b` (both nonzero, `deg a ≥ deg b`).
fn pseudo_rem(mut a: Bivariate, b: &Bivariate) -> Bivariate {
    let lb = b.last().expect("nonzero").clone();
    while a.len() >= b.len() {
        let la = a.last().expect("nonzero").clone();
        let shift = a.len() - b.len();
        for c in a.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, c) in b.iter().enumerate() {
            a[i + shift] = &a[i + shift] - &(&la * c);
        }
        a = trim(a);
    }
    a
}

/// Monic gcd in `K[z]` computed by a primitive remainder sequence over
/// `F[T][z]`, which keeps the `T`-degrees of the coefficients small.
pub(crate) fn kpoly_gcd(p: &KPoly, q: &KPoly) -> Result<KPoly, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    let field: BaseField = p.field();
    let (mut a, mut b) = (primitive_part(clear_denominators(p)), primitive_part(clear_denominators(q)));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive_part(pseudo_rem(a, &b));
        a = std::mem::replace(&mut b, r);
    }
    let out = KPoly::new(field, a.into_iter().map(ValuedScalar::from_poly).collect());
    Ok(out.monic())
}
