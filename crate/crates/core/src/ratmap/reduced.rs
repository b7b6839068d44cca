use std::fmt;

use crate::algebra::{poly_gcd, BaseField, ResidueScalar, Scalar, P1};
use crate::expr::format_residue_fraction;

use super::{substitute_forms, ResPoly};

/// A nonconstant rational map over the residue field, `num/den` coprime
/// with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedMap {
    num: ResPoly,
    den: ResPoly,
}

impl ReducedMap {
    /// `None` when the quotient is constant or the denominator vanishes.
    pub fn new(num: ResPoly, den: ResPoly) -> Option<Self> {
        if den.is_zero() || num.is_zero() {
            return None;
        }
        let h = poly_gcd(&num, &den).ok()?;
        let (num, den) = if h.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&h).ok()?, den.exact_div(&h).ok()?)
        };
        if num.is_constant() && den.is_constant() {
            return None;
        }
        let lc = den.leading().inv()?;
        Some(ReducedMap { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn polynomial(num: ResPoly) -> Option<Self> {
        let field = num.field();
        Self::new(num, ResPoly::one(field))
    }

    pub fn num(&self) -> &ResPoly {
        &self.num
    }

    pub fn den(&self) -> &ResPoly {
        &self.den
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn eval(&self, x: &P1<ResidueScalar>) -> P1<ResidueScalar> {
        match x {
            P1::Finite(x) => match self.num.eval(x).div(&self.den.eval(x)) {
                Some(y) => P1::Finite(y),
                None => P1::Infinity,
            },
            P1::Infinity => {
                let (dn, dd) = (self.num.deg(), self.den.deg());
                if dn > dd {
                    P1::Infinity
                } else if dn == dd {
                    P1::Finite(self.num.leading().div(&self.den.leading()).expect("nonzero"))
                } else {
                    P1::Finite(ResidueScalar::zero(self.field()))
                }
            }
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ReducedMap) -> ReducedMap {
        let (n, d) = substitute_forms(&self.num, &self.den, self.degree(), &inner.num, &inner.den);
        ReducedMap::new(n, d).expect("composition of nonconstant maps is nonconstant")
    }

    /// Coefficients of `num` and `den` as homogeneous forms of degree
    /// `degree()`; used to pull back binary forms.
    pub fn substitute(&self, p: &ResPoly, p_degree: usize) -> ResPoly {
        substitute_forms(p, &ResPoly::zero(self.field()), p_degree, &self.num, &self.den).0
    }
}

impl fmt::Display for ReducedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_residue_fraction(&self.num, &self.den))
    }
}
