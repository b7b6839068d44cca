use crate::algebra::{poly_gcd, rational_roots, Poly, ResidueScalar, Scalar};
use crate::error::{Error, Result};
use crate::ratmap::{ReducedMap, ReductionReport, ResPoly};

use super::class::{GaloisClass, ResidueClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassImage {
    Class(ResidueClass),
    /// A bundle whose points land in several classes.
    Classes(Vec<ResidueClass>),
    /// Bad classes map onto all of `P¹`.
    WholeSphere,
}

/// The rational roots of `p` as points, plus one class for the rest.
pub(crate) fn classes_of_roots(p: &ResPoly) -> Result<Vec<ResidueClass>> {
    let rr = rational_roots(p)?;
    let mut out: Vec<ResidueClass> = rr.roots.into_iter().map(|(r, _)| ResidueClass::Point(r)).collect();
    if !rr.cofactor.is_constant() {
        out.push(ResidueClass::Galois(GaloisClass::from_cofactor(rr.cofactor)));
    }
    Ok(out)
}

/// Minimal polynomial of `r` acting on `k[z]/(m)` by multiplication.
fn min_poly_mod(r: &ResPoly, m: &ResPoly) -> Result<ResPoly> {
    let field = m.field();
    let n = m.deg();
    let vec_of = |p: &ResPoly| -> Vec<ResidueScalar> { (0..n).map(|i| p.coeff(i)).collect() };
    let mut basis: Vec<(usize, Vec<ResidueScalar>, ResPoly)> = Vec::new();
    let mut power = ResPoly::one(field);
    for i in 0..=n {
        let mut v = vec_of(&power);
        let mut combo = Poly::monomial(ResidueScalar::one(field), i);
        for (pivot, bv, bc) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].div(&bv[*pivot]).expect("nonzero pivot");
            for (x, y) in v.iter_mut().zip(bv) {
                *x = x.sub(&factor.mul(y));
            }
            combo = &combo - &bc.scale(&factor);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(combo.monic()),
            Some(pivot) => basis.push((pivot, v, combo)),
        }
        power = (&power * r).rem(m)?;
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}

/// Classes of `φ̄(α)` over the roots `α` of a Galois class.
pub(crate) fn push_galois(map: &ReducedMap, g: &GaloisClass) -> Result<Vec<ResidueClass>> {
    let p = g.poly();
    let at_pole = poly_gcd(p, map.den())?;
    let rest = p.exact_div(&at_pole)?;
    let mut out = Vec::new();
    if !at_pole.is_constant() {
        out.push(ResidueClass::Infinity);
    }
    if !rest.is_constant() {
        let (_, inv, _) = Poly::ext_gcd(&map.den().rem(&rest)?, &rest)?;
        let r = (&map.num().rem(&rest)? * &inv).rem(&rest)?;
        out.extend(classes_of_roots(&min_poly_mod(&r, &rest)?)?);
    }
    out.sort();
    Ok(out)
}

/// Image of a residue class under the reduced map.
pub fn class_image(report: &ReductionReport, class: &ResidueClass) -> Result<ClassImage> {
    let map = report.reduced()?;
    if report.is_bad(class) {
        return Ok(ClassImage::WholeSphere);
    }
    match class {
        ResidueClass::Galois(g) => {
            if g.poly().field() != map.field() {
                return Err(Error::InvalidClass("class over a different field".into()));
            }
            let mut images = push_galois(map, g)?;
            if images.len() == 1 {
                Ok(ClassImage::Class(images.pop().expect("one image")))
            } else {
                Ok(ClassImage::Classes(images))
            }
        }
        _ => Ok(ClassImage::Class(ResidueClass::from_p1(map.eval(&class.as_p1().expect("rational class"))))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, ValuedScalar};
    use crate::ratmap::{reduce, KPoly, RatMap};

    const Q: BaseField = BaseField::Rational;

    fn t(c: &[i64]) -> ValuedScalar {
        ValuedScalar::from_poly(Poly::from_i64s(Q, c))
    }

    fn kp(cs: &[&[i64]]) -> KPoly {
        KPoly::new(Q, cs.iter().map(|c| t(c)).collect())
    }

    fn pt(n: i64) -> ResidueClass {
        ResidueClass::Point(ResidueScalar::from_i64(Q, n))
    }

    fn galois(cs: &[i64]) -> ResidueClass {
        ResidueClass::Galois(GaloisClass::new(ResPoly::from_i64s(Q, cs)).unwrap())
    }

    fn intro() -> ReductionReport {
        reduce(&RatMap::new(kp(&[&[], &[], &[1, 1], &[1]]), kp(&[&[1], &[1]])).unwrap())
    }

    #[test]
    fn intro_images() {
        let r = intro();
        assert_eq!(class_image(&r, &pt(2)).unwrap(), ClassImage::Class(pt(4)));
        assert_eq!(class_image(&r, &pt(-1)).unwrap(), ClassImage::WholeSphere);
        assert_eq!(class_image(&r, &galois(&[-2, 0, 1])).unwrap(), ClassImage::Class(pt(2)));
        assert_eq!(class_image(&r, &ResidueClass::Infinity).unwrap(), ClassImage::Class(ResidueClass::Infinity));
    }

    #[test]
    fn galois_pushforward_stays_galois() {
        // z ↦ z + 1 sends the roots of z² − 2 to the roots of z² − 2z − 1
        let r = reduce(&RatMap::polynomial(kp(&[&[1], &[1]])).unwrap());
        assert_eq!(class_image(&r, &galois(&[-2, 0, 1])).unwrap(), ClassImage::Class(galois(&[-1, -2, 1])));
    }

    #[test]
    fn galois_class_through_a_pole() {
        // 1/(z² − 2): the roots of z² − 2 go to infinity
        let r = reduce(&RatMap::new(kp(&[&[1]]), kp(&[&[-2], &[], &[1]])).unwrap());
        assert_eq!(class_image(&r, &galois(&[-2, 0, 1])).unwrap(), ClassImage::Class(ResidueClass::Infinity));
    }

    #[test]
    fn bundle_splits() {
        // z² on the roots of (z² + 1)(z² − 2) lands on -1 and 2
        let r = reduce(&RatMap::polynomial(kp(&[&[], &[], &[1]])).unwrap());
        let bundle = galois(&[-2, 0, -1, 0, 1]);
        assert_eq!(class_image(&r, &bundle).unwrap(), ClassImage::Classes(vec![pt(-1), pt(2)]));
    }
}
