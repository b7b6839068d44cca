use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{BaseField, ResidueScalar, P1};
use crate::error::{Error, Result};
use crate::ratmap::{ReducedMap, ResPoly};

/// `m/n` with `gcd(m, n) = 1` and `n ≥ 0`; infinity is `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ProjPoint {
    pub m: BigInt,
    pub n: BigInt,
}

impl ProjPoint {
    pub fn new(m: BigInt, n: BigInt) -> Self {
        let g = m.gcd(&n);
        let (mut m, mut n) = if g.is_zero() || g.is_one() { (m, n) } else { (m / &g, n / &g) };
        if n.is_negative() || (n.is_zero() && m.is_negative()) {
            m = -m;
            n = -n;
        }
        ProjPoint { m, n }
    }

    pub fn from_q(x: &P1<BigRational>) -> Self {
        match x {
            P1::Finite(q) => ProjPoint { m: q.numer().clone(), n: q.denom().clone() },
            P1::Infinity => ProjPoint { m: BigInt::one(), n: BigInt::zero() },
        }
    }

    pub fn height(&self) -> BigInt {
        let a = self.m.abs();
        if a > self.n {
            a
        } else {
            self.n.clone()
        }
    }

    pub fn bits(&self) -> u64 {
        self.m.bits().max(self.n.bits())
    }
}

pub(crate) fn residue_to_q(x: &P1<ResidueScalar>) -> Result<P1<BigRational>> {
    match x {
        P1::Infinity => Ok(P1::Infinity),
        P1::Finite(ResidueScalar::Rational(q)) => Ok(P1::Finite(q.clone())),
        P1::Finite(_) => Err(Error::InvalidArgument("expected a rational point".into())),
    }
}

pub(crate) fn q_to_residue(x: &P1<BigRational>) -> P1<ResidueScalar> {
    match x {
        P1::Infinity => P1::Infinity,
        P1::Finite(q) => P1::Finite(ResidueScalar::Rational(q.clone())),
    }
}

/// A reduced map over `Q` with both forms scaled to coprime integer
/// coefficients, padded to length `d + 1`.
#[derive(Clone, Debug)]
pub(crate) struct IntMap {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub d: usize,
}

impl IntMap {
    pub fn new(map: &ReducedMap) -> Result<Self> {
        if map.field() != BaseField::Rational {
            return Err(Error::InvalidArgument("heights need a map over q".into()));
        }
        let d = map.degree();
        let rat = |p: &ResPoly| -> Vec<BigRational> {
            (0..=d).map(|i| p.coeff(i).as_rational().cloned().expect("rational")).collect()
        };
        let (fa, gb) = (rat(map.num()), rat(map.den()));
        let den = fa.iter().chain(&gb).fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scale = |v: &[BigRational]| -> Vec<BigInt> { v.iter().map(|q| q.numer() * (&den / q.denom())).collect() };
        let (mut a, mut b) = (scale(&fa), scale(&gb));
        let content = a.iter().chain(&b).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in a.iter_mut().chain(b.iter_mut()) {
            *c /= &content;
        }
        Ok(IntMap { a, b, d })
    }

    fn form(&self, coeffs: &[BigInt], m: &BigInt, npow: &[BigInt]) -> BigInt {
        let mut acc = coeffs[self.d].clone();
        for i in (0..self.d).rev() {
            acc = acc * m + &coeffs[i] * &npow[self.d - i];
        }
        acc
    }

    /// The homogeneous pair `(F(m, n), G(m, n))` before cancellation.
    pub fn forms(&self, x: &ProjPoint) -> (BigInt, BigInt) {
        let mut npow = vec![BigInt::one()];
        for i in 1..=self.d {
            npow.push(&npow[i - 1] * &x.n);
        }
        (self.form(&self.a, &x.m, &npow), self.form(&self.b, &x.m, &npow))
    }

    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        let (f, g) = self.forms(x);
        ProjPoint::new(f, g)
    }
}

/// Forward orbit `x, φ̄(x), …` up to `depth` steps, stopping early once a
/// point exceeds `bit_cap` bits. The flag reports truncation.
pub(crate) fn orbit(map: &IntMap, x: &ProjPoint, depth: usize, bit_cap: u64) -> (Vec<ProjPoint>, bool) {
    let mut out = vec![x.clone()];
    while out.len() <= depth {
        let next = map.apply(out.last().expect("nonempty"));
        if next.bits() > bit_cap {
            return (out, true);
        }
        out.push(next);
    }
    (out, false)
}
