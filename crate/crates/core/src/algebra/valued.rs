use std::fmt;

use super::{poly_gcd, AlgebraError, BaseField, ExtInt, Poly, ResidueScalar, Scalar};

/// An element of `K = F(T)`, stored as a reduced fraction of polynomials in
/// `T` with monic denominator.
///
/// The valuation is `ord_T`; absolute values `|x| = ε^v(x)` are never
/// materialised, every comparison happens on the integer valuations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuedScalar {
    num: Poly<ResidueScalar>,
    den: Poly<ResidueScalar>,
}

impl ValuedScalar {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: Poly<ResidueScalar>, den: Poly<ResidueScalar>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly<ResidueScalar>, den: Poly<ResidueScalar>) -> Self {
        let field = den.field();
        if num.is_zero() {
            return ValuedScalar { num, den: Poly::one(field) };
        }
        if den.is_constant() {
            let inv = den.leading().inv().expect("nonzero denominator");
            return ValuedScalar { num: num.scale(&inv), den: Poly::one(field) };
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = den.leading().inv().expect("nonzero denominator");
        ValuedScalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(num: Poly<ResidueScalar>) -> Self {
        let field = num.field();
        ValuedScalar { num, den: Poly::one(field) }
    }

    pub fn from_residue(c: ResidueScalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The uniformizer `T`.
    pub fn uniformizer(field: BaseField) -> Self {
        Self::from_poly(Poly::var(field))
    }

    /// `c·T^k` for any integer `k`.
    pub fn monomial(c: ResidueScalar, k: i64) -> Self {
        let field = c.base_field();
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::reduced(Poly::constant(c), Poly::monomial(ResidueScalar::one(field), (-k) as usize))
        }
    }

    pub fn numer(&self) -> &Poly<ResidueScalar> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<ResidueScalar> {
        &self.den
    }

    /// True when the denominator is 1, i.e. the element lies in `F[T]`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `ord_T(num) − ord_T(den)`, `+∞` for zero.
    pub fn valuation(&self) -> ExtInt {
        match self.num.low_order() {
            None => ExtInt::Infinity,
            Some(n) => {
                let d = self.den.low_order().expect("nonzero denominator");
                ExtInt::Finite(n as i64 - d as i64)
            }
        }
    }

    /// Image under `T ↦ 0`; zero exactly when the valuation is positive.
    pub fn residue(&self) -> Result<ResidueScalar, AlgebraError> {
        let field = self.field();
        match self.valuation() {
            ExtInt::Infinity => Ok(ResidueScalar::zero(field)),
            ExtInt::Finite(v) if v < 0 => Err(AlgebraError::NegativeValuation),
            ExtInt::Finite(v) if v > 0 => Ok(ResidueScalar::zero(field)),
            ExtInt::Finite(_) => {
                let k = self.den.low_order().expect("nonzero denominator");
                Ok(self.num.coeff(k).div(&self.den.coeff(k)).expect("nonzero low coefficient"))
            }
        }
    }

    /// Leading coefficient of the `T`-adic expansion: `x = c·T^v(x)(1 + O(T))`.
    pub fn angular_component(&self) -> Option<ResidueScalar> {
        let n = self.num.low_order()?;
        let d = self.den.low_order().expect("nonzero denominator");
        self.num.coeff(n).div(&self.den.coeff(d))
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.mul(&Self::monomial(ResidueScalar::one(self.field()), k))
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    /// Embeds a rational number (or its image in `F_p`); `None` when the
    /// denominator vanishes in `F_p`.
    pub fn try_from_rational(field: BaseField, q: &num_rational::BigRational) -> Option<Self> {
        field.try_rational(q).map(Self::from_residue)
    }

    /// Evaluate the rational function in `T` at a residue-field element;
    /// `None` at a pole.
    pub fn eval_at(&self, t: &ResidueScalar) -> Option<ResidueScalar> {
        self.num.eval(t).div(&self.den.eval(t))
    }
}

impl Scalar for ValuedScalar {
    fn base_field(&self) -> BaseField {
        self.field()
    }

    fn zero(field: BaseField) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    fn one(field: BaseField) -> Self {
        Self::from_poly(Poly::one(field))
    }

    fn from_i64(field: BaseField, n: i64) -> Self {
        Self::from_residue(ResidueScalar::from_i64(field, n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            if self.den.is_constant() {
                return ValuedScalar { num: &self.num + &rhs.num, den: self.den.clone() };
            }
            return Self::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduced(num, &self.den * &rhs.den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_constant() && rhs.den.is_constant() {
            return ValuedScalar { num: &self.num * &rhs.num, den: self.den.clone() };
        }
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn neg(&self) -> Self {
        ValuedScalar { num: -&self.num, den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_valued(self))
    }
}
