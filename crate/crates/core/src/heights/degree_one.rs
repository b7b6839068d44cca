use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{BaseField, P1};
use crate::error::{Error, Result};
use crate::ratmap::ReducedMap;

/// `z ↦ (az + b)/(cz + d)` over `Q`, as a matrix up to scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMobius {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl RationalMobius {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        RationalMobius { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(q(1), q(0), q(0), q(1))
    }

    /// The matrix of a degree-one reduced map over `Q`.
    pub fn from_map(map: &ReducedMap) -> Result<Self> {
        if map.degree() != 1 || map.field() != BaseField::Rational {
            return Err(Error::InvalidArgument("expected a degree one map over q".into()));
        }
        let c = |p: &crate::ratmap::ResPoly, i| p.coeff(i).as_rational().cloned().expect("rational");
        Ok(Self::new(c(map.num(), 1), c(map.num(), 0), c(map.den(), 1), c(map.den(), 0)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    /// Adjugate; inverse up to the determinant.
    pub fn inverse(&self) -> Self {
        Self::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn apply(&self, x: &P1<BigRational>) -> P1<BigRational> {
        let (num, den) = match x {
            P1::Finite(x) => (&self.a * x + &self.b, &self.c * x + &self.d),
            P1::Infinity => (self.a.clone(), self.c.clone()),
        };
        if den.is_zero() {
            P1::Infinity
        } else {
            P1::Finite(num / den)
        }
    }

    /// Divides through so the lower-right entry is 1 when it is nonzero.
    fn normalized(self) -> Self {
        if self.d.is_zero() {
            return self;
        }
        let s = self.d.clone();
        Self::new(&self.a / &s, &self.b / &s, &self.c / &s, q(1))
    }
}

impl fmt::Display for RationalMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Conjugacy normal form of a degree-one map over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeOneForm {
    /// Some iterate is the identity.
    FiniteOrder(u32),
    /// `w ↦ w + beta` in the coordinate `w = conjugator(z)`.
    Translation { conjugator: RationalMobius, beta: BigRational },
    /// `w ↦ lambda·w`, `lambda ∉ {0, ±1}`.
    Scaling { conjugator: RationalMobius, lambda: BigRational },
    /// Infinite order with fixed points outside `Q`.
    IrrationalFixedPoints,
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

fn finite_order(m: &RationalMobius) -> Option<u32> {
    let mut acc = m.clone();
    for j in 1..=6 {
        if acc.is_scalar() {
            return Some(j);
        }
        acc = acc.mul(m);
    }
    None
}

pub fn degree_one_form(map: &ReducedMap) -> Result<DegreeOneForm> {
    let m = RationalMobius::from_map(map)?;
    if let Some(j) = finite_order(&m) {
        return Ok(DegreeOneForm::FiniteOrder(j));
    }
    let RationalMobius { a, b, c, d } = m.clone();
    let conj = |g: RationalMobius| g.mul(&m).mul(&g.inverse()).normalized();
    if c.is_zero() {
        if a == d {
            return Ok(DegreeOneForm::Translation { conjugator: RationalMobius::identity(), beta: b / d });
        }
        let z0 = &b / (&d - &a);
        let g = RationalMobius::new(q(1), -z0, q(0), q(1));
        return Ok(DegreeOneForm::Scaling { conjugator: g, lambda: a / d });
    }
    let disc = (&d - &a) * (&d - &a) + q(4) * &b * &c;
    let two_c = q(2) * &c;
    if disc.is_zero() {
        let z0 = (&a - &d) / &two_c;
        let g = RationalMobius::new(q(0), q(1), q(1), -z0);
        let psi = conj(g.clone());
        return Ok(DegreeOneForm::Translation { conjugator: g, beta: psi.b });
    }
    match rational_sqrt(&disc) {
        None => Ok(DegreeOneForm::IrrationalFixedPoints),
        Some(s) => {
            let z1 = (&a - &d + &s) / &two_c;
            let z2 = (&a - &d - &s) / &two_c;
            let g = RationalMobius::new(q(1), -z1, q(1), -z2);
            let psi = conj(g.clone());
            Ok(DegreeOneForm::Scaling { conjugator: g, lambda: psi.a })
        }
    }
}

/// Primes dividing neither numerator nor denominator of `c`; pairwise in
/// distinct grand orbits of `z ↦ cz` by comparing `p`-adic valuations.
pub fn degree_one_family(c: &BigRational, n: usize) -> Result<Vec<BigInt>> {
    if c.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    if c.abs().is_one() {
        return Err(Error::RootOfUnity(c.to_string()));
    }
    let mut out = Vec::with_capacity(n);
    let mut p = BigInt::from(2);
    while out.len() < n {
        if is_prime(&p) && !c.numer().is_multiple_of(&p) && !c.denom().is_multiple_of(&p) {
            out.push(p.clone());
        }
        p += 1;
    }
    if !scaling_family_distinct(c, &out, COLLISION_DEPTH) {
        return Err(Error::HypothesesNotMet("collision found in scaling family".into()));
    }
    Ok(out)
}

/// Brute-force depth for re-checking scaling families.
pub const COLLISION_DEPTH: u32 = 12;

/// No `c^k·x_i = x_j` with `i ≠ j` and `|k| ≤ depth`.
pub fn scaling_family_distinct(c: &BigRational, xs: &[BigInt], depth: u32) -> bool {
    let mut powers = vec![BigRational::one()];
    for k in 1..=depth as usize {
        powers.push(&powers[k - 1] * c);
    }
    for (i, xi) in xs.iter().enumerate() {
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let ratio = BigRational::new(xi.clone(), xj.clone());
            if powers.contains(&ratio) {
                return false;
            }
        }
    }
    true
}

fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let mut k = BigInt::from(2);
    while &k * &k <= *n {
        if n.is_multiple_of(&k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `β/1, …, β/n`: distinct wandering grand orbits of `w ↦ w + β`.
pub fn translation_family(beta: &BigRational, n: usize) -> Vec<BigRational> {
    (1..=n as i64).map(|j| beta / q(j)).collect()
}

/// Integer `k` with `λ^k = r`, if any. `|λ|` is not 1, so heights of
/// powers grow and the search is finite.
pub(crate) fn discrete_log(lambda: &BigRational, r: &BigRational) -> Option<i64> {
    if r.is_one() {
        return Some(0);
    }
    let height = |x: &BigRational| x.numer().abs().max(x.denom().clone());
    let hr = height(r);
    let inv = lambda.recip();
    let (mut up, mut down) = (lambda.clone(), inv.clone());
    let mut k = 1i64;
    while height(&up) <= hr {
        if up == *r {
            return Some(k);
        }
        if down == *r {
            return Some(-k);
        }
        up = &up * lambda;
        down = &down * &inv;
        k += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::ResPoly;

    const Q: BaseField = BaseField::Rational;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn map(num: &[i64], den: &[i64]) -> ReducedMap {
        ReducedMap::new(ResPoly::from_i64s(Q, num), ResPoly::from_i64s(Q, den)).unwrap()
    }

    #[test]
    fn family_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(degree_one_family(&rq(2, 1), 3).unwrap(), ints(&[3, 5, 7]));
        assert_eq!(degree_one_family(&rq(3, 2), 2).unwrap(), ints(&[5, 7]));
        assert!(matches!(degree_one_family(&rq(-1, 1), 2), Err(Error::RootOfUnity(_))));
        assert_eq!(degree_one_family(&rq(0, 1), 2), Err(Error::ZeroMultiplier));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(
            degree_one_form(&map(&[1, 1], &[1])).unwrap(),
            DegreeOneForm::Translation { conjugator: RationalMobius::identity(), beta: rq(1, 1) }
        );
        // 1/z and -z have order 2, z ↦ 1/(1 - z) has order 3
        assert_eq!(degree_one_form(&map(&[1], &[0, 1])).unwrap(), DegreeOneForm::FiniteOrder(2));
        assert_eq!(degree_one_form(&map(&[0, -1], &[1])).unwrap(), DegreeOneForm::FiniteOrder(2));
        assert_eq!(degree_one_form(&map(&[1], &[1, -1])).unwrap(), DegreeOneForm::FiniteOrder(3));
        // 2z + 1 fixes -1 and ∞
        match degree_one_form(&map(&[1, 2], &[1])).unwrap() {
            DegreeOneForm::Scaling { conjugator, lambda } => {
                assert_eq!(lambda, rq(2, 1));
                assert_eq!(conjugator.apply(&P1::Finite(rq(-1, 1))), P1::Finite(rq(0, 1)));
            }
            other => panic!("{other:?}"),
        }
        // z/(z + 1) is parabolic at 0
        assert!(matches!(degree_one_form(&map(&[0, 1], &[1, 1])).unwrap(), DegreeOneForm::Translation { .. }));
        // (z + 2)/(z + 1) fixes ±√2
        assert_eq!(degree_one_form(&map(&[2, 1], &[1, 1])).unwrap(), DegreeOneForm::IrrationalFixedPoints);
    }

    #[test]
    fn hyperbolic_with_rational_fixed_points() {
        // (2z + 1)/(z + 2) fixes ±1 with multiplier 3 or 1/3
        let phi = map(&[1, 2], &[2, 1]);
        match degree_one_form(&phi).unwrap() {
            DegreeOneForm::Scaling { conjugator, lambda } => {
                assert!(lambda == rq(3, 1) || lambda == rq(1, 3));
                let m = RationalMobius::from_map(&phi).unwrap();
                let x = P1::Finite(rq(5, 7));
                let lhs = conjugator.apply(&m.apply(&x));
                let w = conjugator.apply(&x);
                assert_eq!(lhs, P1::Finite(lambda * w.finite().unwrap()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(discrete_log(&rq(2, 3), &rq(8, 27)), Some(3));
        assert_eq!(discrete_log(&rq(2, 3), &rq(9, 4)), Some(-2));
        assert_eq!(discrete_log(&rq(2, 1), &rq(3, 1)), None);
    }
}
