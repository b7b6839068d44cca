use crate::algebra::{Scalar, ValuedScalar};
use crate::error::{Error, Result};
use crate::ratmap::{KPoly, RatMap};
use crate::residue::ResidueClass;

use super::newton::{newton_polygon, Slope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepellingVerdict {
    /// A fixed point `α` with `v(α − ζ) = offset` (`None`: `α = ζ` exactly)
    /// and `v(φ′(α)) = derivative_valuation < 0`. For the class at infinity
    /// both are measured in the coordinate `1/z`.
    Witness { offset: Option<Slope>, derivative_valuation: Slope },
    NoneFound,
}

/// Looks for a repelling fixed point of `φ` in the residue class of a
/// rational point or infinity.
pub fn repelling_fixed_class(phi: &RatMap, class: &ResidueClass) -> Result<RepellingVerdict> {
    let field = phi.field();
    match class {
        ResidueClass::Point(c) => search(phi, &ValuedScalar::from_residue(c.clone())),
        ResidueClass::Infinity => search(&phi.flip(), &ValuedScalar::zero(field)),
        ResidueClass::Galois(_) => Err(Error::InvalidArgument("repelling search needs a rational class".into())),
    }
}

fn search(phi: &RatMap, zeta: &ValuedScalar) -> Result<RepellingVerdict> {
    let field = phi.field();
    let big_f = phi.f().taylor_shift(zeta);
    let big_g = phi.g().taylor_shift(zeta);
    let lin = KPoly::new(field, vec![zeta.clone(), ValuedScalar::one(field)]);
    let fixed = &big_f - &(&lin * &big_g);
    let deriv = &(&big_f.derivative() * &big_g) - &(&big_f * &big_g.derivative());
    if fixed.is_zero() {
        // the identity map has no repelling points
        return Ok(RepellingVerdict::NoneFound);
    }
    let np = newton_polygon(&fixed)?;
    if np.zero_roots() > 0 {
        let g0 = big_g.coeff(0);
        let d0 = deriv.coeff(0);
        if let (Some(vd), Some(vg)) = (d0.valuation().finite(), g0.valuation().finite()) {
            let v = Slope::from_integer(vd - 2 * vg);
            if v < Slope::from_integer(0) {
                return Ok(RepellingVerdict::Witness { offset: None, derivative_valuation: v });
            }
        }
    }
    let mut unresolved_pole = false;
    for (s, _) in np.root_valuations() {
        if s <= Slope::from_integer(0) {
            continue;
        }
        if deriv.is_zero() {
            break;
        }
        let (vd, d_unique) = newton_polygon(&deriv)?.min_on_sphere(s);
        if !d_unique {
            continue;
        }
        let (vg, g_unique) = newton_polygon(&big_g)?.min_on_sphere(s);
        if !g_unique {
            unresolved_pole = true;
            continue;
        }
        let v = vd - vg * 2;
        if v < Slope::from_integer(0) {
            return Ok(RepellingVerdict::Witness { offset: Some(s), derivative_valuation: v });
        }
    }
    if unresolved_pole {
        return Err(Error::BadLift);
    }
    Ok(RepellingVerdict::NoneFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, Poly, ResidueScalar};

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

    fn witness(s: i64, d: i64) -> RepellingVerdict {
        RepellingVerdict::Witness { offset: Some(Slope::from_integer(s)), derivative_valuation: Slope::from_integer(d) }
    }

    #[test]
    fn cyclotomic_two() {
        // z² + T/(z + 1)
        let phi = RatMap::new(kp(&[&[0, 1], &[], &[1], &[1]]), kp(&[&[1], &[1]])).unwrap();
        assert_eq!(repelling_fixed_class(&phi, &pt(-1)).unwrap(), witness(1, -1));
    }

    #[test]
    fn translation_example() {
        let phi = RatMap::new(kp(&[&[0, 1], &[1], &[1]]), kp(&[&[], &[1]])).unwrap();
        assert_eq!(repelling_fixed_class(&phi, &pt(0)).unwrap(), witness(1, -1));
    }

    #[test]
    fn indifferent_fixed_point_is_not_a_witness() {
        let sq = RatMap::polynomial(kp(&[&[], &[], &[1]])).unwrap();
        assert_eq!(repelling_fixed_class(&sq, &pt(1)).unwrap(), RepellingVerdict::NoneFound);
        assert_eq!(repelling_fixed_class(&sq, &ResidueClass::Infinity).unwrap(), RepellingVerdict::NoneFound);
    }

    #[test]
    fn exact_repelling_point() {
        // z/T fixes 0 with multiplier 1/T
        let phi = RatMap::new(kp(&[&[], &[1]]), kp(&[&[0, 1]])).unwrap();
        assert_eq!(
            repelling_fixed_class(&phi, &pt(0)).unwrap(),
            RepellingVerdict::Witness { offset: None, derivative_valuation: Slope::from_integer(-1) }
        );
    }
}
