use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, BaseField, Scalar};

/// Dense univariate polynomial, coefficients stored from the constant term
/// upward. Trailing zeros are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    field: BaseField,
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn new(field: BaseField, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: BaseField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: BaseField) -> Self {
        Self::constant(C::one(field))
    }

    pub fn constant(c: C) -> Self {
        let field = c.base_field();
        Self::new(field, vec![c])
    }

    /// The variable itself.
    pub fn var(field: BaseField) -> Self {
        Self::monomial(C::one(field), 1)
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let field = c.base_field();
        let mut coeffs = vec![C::zero(field); degree];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn from_i64s(field: BaseField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| C::from_i64(field, c)).collect())
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`; handy where only nonzero
    /// polynomials can occur or the distinction does not matter.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| C::zero(self.field))
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(|| C::zero(self.field))
    }

    /// Index of the lowest nonzero coefficient (order of vanishing at 0).
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Scale so the leading coefficient is 1; the zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    /// Drop the lowest `k` coefficients (exact division by `x^k` when they vanish).
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `x^n p(1/x)`; requires `n ≥ deg p`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1, "reverse length below degree");
        let mut coeffs = vec![C::zero(self.field); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(self.field, coeffs)
    }

    /// Truncate to terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.field, self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&C::from_i64(self.field, i as i64)))
            .collect();
        Self::new(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &C) -> Self {
        let lin = Self::new(self.field, vec![a.clone(), C::one(self.field)]);
        self.compose(&lin)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let lc = divisor.coeffs.last().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.inv().ok_or(AlgebraError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![C::zero(self.field); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient when `divisor` is known to divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        matches!(other.rem(self), Ok(r) if r.is_zero())
    }

    /// Extended Euclid: `(g, u, v)` with `u·a + v·b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> Result<(Self, Self, Self), AlgebraError> {
        if a.is_zero() && b.is_zero() {
            return Err(AlgebraError::BothZero);
        }
        let field = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero(field));
        let (mut t0, mut t1) = (Self::zero(field), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.leading().inv().expect("nonzero gcd");
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| op(&self.coeff(i), &rhs.coeff(i))).collect();
        Self::new(self.field, coeffs)
    }
}

/// Monic gcd over the coefficient field; a unit gcd is returned as `1`.
pub fn poly_gcd<C: Scalar>(p: &Poly<C>, q: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    let (mut a, mut b) = (p.monic(), q.monic());
    while !b.is_zero() {
        // monic remainders keep rational coefficients small
        let r = a.rem(&b)?.monic();
        a = std::mem::replace(&mut b, r);
    }
    Ok(a)
}

/// Resultant through the Euclidean remainder sequence.
pub fn resultant<C: Scalar>(p: &Poly<C>, q: &Poly<C>) -> Result<C, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let field = p.field;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut acc = C::one(field);
    loop {
        let da = a.deg();
        let db = b.deg();
        if db == 0 {
            return Ok(acc.mul(&b.leading().pow(da as u64)));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(C::zero(field));
        }
        let dr = r.deg();
        if da % 2 == 1 && db % 2 == 1 {
            acc = acc.neg();
        }
        acc = acc.mul(&b.leading().pow((da - dr) as u64));
        a = std::mem::replace(&mut b, r);
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.combine(rhs, |a, b| a.add(b))
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.combine(rhs, |a, b| a.sub(b))
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![C::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, coeffs)
    }
}
