//! Outward-rounded natural logarithms of positive integers in fixed point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Fractional bits carried by the fixed-point series.
pub const LOG_PRECISION: u32 = 128;

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Bounds on `2^prec · atanh(num/den)` for `0 ≤ num/den ≤ 1/3`.
fn atanh_scaled(num: &BigInt, den: &BigInt, prec: u32) -> (BigInt, BigInt) {
    let s = BigInt::one() << prec;
    let t_lo = (num * &s) / den;
    let t_hi = ceil_div(&(num * &s), den);
    let t2_lo = (&t_lo * &t_lo) / &s;
    let t2_hi = ceil_div(&(&t_hi * &t_hi), &s);
    // 9^terms ≥ 2^prec makes the tail below one unit
    let terms = (prec as usize * 100) / 316 + 2;
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let (mut p_lo, mut p_hi) = (t_lo, t_hi);
    for k in 0..terms {
        let odd = BigInt::from(2 * k + 1);
        lo += &p_lo / &odd;
        hi += ceil_div(&p_hi, &odd);
        p_lo = (&p_lo * &t2_lo) / &s;
        p_hi = ceil_div(&(&p_hi * &t2_hi), &s);
    }
    hi += 2;
    (lo, hi)
}

fn ln2_scaled(prec: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_scaled(&BigInt::one(), &BigInt::from(3), prec);
    (lo * 2, hi * 2)
}

/// `lo ≤ ln h ≤ hi` with both bounds exact rationals; exact zero for `h = 1`.
pub fn ln_bounds(h: &BigInt) -> (BigRational, BigRational) {
    assert!(h >= &BigInt::one(), "logarithm of a non-positive integer");
    if h.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    let prec = LOG_PRECISION;
    let b = h.bits();
    let base = BigInt::one() << (b - 1);
    let (a_lo, a_hi) = atanh_scaled(&(h - &base), &(h + &base), prec);
    let (l2_lo, l2_hi) = ln2_scaled(prec);
    let k = BigInt::from(b - 1);
    let s = BigInt::one() << prec;
    let lo = BigRational::new(&k * l2_lo + a_lo * 2, s.clone());
    let hi = BigRational::new(&k * l2_hi + a_hi * 2, s);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn check(h: i64) {
        let (lo, hi) = ln_bounds(&BigInt::from(h));
        let truth = (h as f64).ln();
        assert!(lo.to_f64().unwrap() <= truth + 1e-12, "lo for {h}");
        assert!(hi.to_f64().unwrap() >= truth - 1e-12, "hi for {h}");
        assert!(&hi - &lo < BigRational::new(1.into(), BigInt::one() << 100));
    }

    #[test]
    fn small_values() {
        for h in [2, 3, 4, 5, 7, 26, 677, 1 << 40, 999_999_937] {
            check(h);
        }
    }

    #[test]
    fn one_is_exact() {
        assert_eq!(ln_bounds(&BigInt::one()), (BigRational::zero(), BigRational::zero()));
    }

    #[test]
    fn power_of_two_is_a_multiple_of_ln2() {
        let (lo1, hi1) = ln_bounds(&BigInt::from(2));
        let (lo8, hi8) = ln_bounds(&BigInt::from(256));
        assert!(lo8 <= &hi1 * BigInt::from(8));
        assert!(hi8 >= &lo1 * BigInt::from(8));
    }

    #[test]
    fn huge_values_stay_bracketed() {
        let h = BigInt::from(3).pow(5000);
        let (lo, hi) = ln_bounds(&h);
        let approx = 5000.0 * 3f64.ln();
        assert!((lo.to_f64().unwrap() - approx).abs() < 1e-6);
        assert!(lo < hi);
    }
}
