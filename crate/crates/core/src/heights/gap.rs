use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{resultant, BaseField, Poly, Scalar};
use crate::error::{Error, Result};
use crate::ratmap::{ReducedMap, ResPoly};

use super::point::{IntMap, ProjPoint};

const SAMPLE_SIZE: usize = 100;
const SAMPLE_SEED: u64 = 0x5eed_4e16;

/// Integers with `H(φ̄(x)) ≤ b_up·H(x)^d` and `H(x)^d ≤ b_low·H(φ̄(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightGapConstants {
    pub b_up: BigInt,
    pub b_low: BigInt,
    pub degree: usize,
    /// Both bounds held on every sampled point.
    pub verified: bool,
}

impl HeightGapConstants {
    pub fn bound(&self) -> BigInt {
        self.b_up.clone().max(self.b_low.clone())
    }
}

fn int_poly(cs: &[BigInt]) -> ResPoly {
    Poly::new(BaseField::Rational, cs.iter().map(|c| BaseField::Rational.integer(c)).collect())
}

/// `(D, S)` for a Bezout pair: `D` clears every denominator and `S` is the
/// absolute coefficient sum of `D·u` and `D·v`.
fn bezout_size(u: &ResPoly, v: &ResPoly) -> (BigInt, BigInt) {
    let rats: Vec<&BigRational> = u
        .coeffs()
        .iter()
        .chain(v.coeffs())
        .map(|c| c.as_rational().expect("rational"))
        .collect();
    let den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let sum = rats
        .iter()
        .map(|q| (q.numer() * (&den / q.denom())).abs())
        .fold(BigInt::zero(), |acc, c| acc + c);
    (den, sum)
}

fn bezout(f: &ResPoly, g: &ResPoly) -> Result<(BigInt, BigInt)> {
    let (h, u, v) = Poly::ext_gcd(f, g)?;
    if !h.is_constant() {
        return Err(Error::InseparableOrSharedRoot);
    }
    Ok(bezout_size(&u, &v))
}

fn rat_ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Explicit height-gap constants for a reduced map over `Q`.
///
/// The upper bound is the larger absolute coefficient sum of the integer
/// forms. The lower bound comes from Bezout identities `uF + vG = 1` for the
/// pair and for its reversal, which bound `H(x)^{2d−1}` by `H(x)^{d−1}` times
/// the size of `(F(m, n), G(m, n))`, together with the fact that
/// `gcd(F(m, n), G(m, n))` divides the lcm of the two Bezout denominators.
pub fn height_gap_constants(map: &ReducedMap) -> Result<HeightGapConstants> {
    let im = IntMap::new(map)?;
    let (f, g) = (int_poly(&im.a), int_poly(&im.b));
    let res = resultant(&f, &g)?;
    if res.is_zero() {
        return Err(Error::InseparableOrSharedRoot);
    }
    let abs_sum = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
    let b_up = abs_sum(&im.a).max(abs_sum(&im.b));
    let d = im.d;
    let (d1, s1) = bezout(&f, &g)?;
    let (d2, s2) = bezout(&f.reverse(d), &g.reverse(d))?;
    let c = BigRational::new(s1, d1.clone()).max(BigRational::new(s2, d2.clone()));
    let e = d1.lcm(&d2);
    let b_low = rat_ceil(&(c * BigRational::from_integer(e))).max(BigInt::one());
    let mut constants = HeightGapConstants { b_up, b_low, degree: d, verified: false };
    constants.verified = sample_check(&im, &constants);
    Ok(constants)
}

fn sample_check(im: &IntMap, c: &HeightGapConstants) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut points = vec![ProjPoint::new(BigInt::one(), BigInt::zero())];
    while points.len() < SAMPLE_SIZE {
        let m: i64 = rng.gen_range(-1000..=1000);
        let n: i64 = rng.gen_range(1..=1000);
        points.push(ProjPoint::new(m.into(), n.into()));
    }
    points.iter().all(|x| {
        let hd = x.height().pow(c.degree as u32);
        let hy = im.apply(x).height();
        hy <= &c.b_up * &hd && hd <= &c.b_low * &hy
    })
}
