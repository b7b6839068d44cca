//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use wander_core::algebra::{poly_gcd, BaseField, ResidueScalar, Scalar, ValuedScalar, P1};
use wander_core::local::{Disk, DiskKind};
use wander_core::ratmap::{KPoly, ResPoly};
use wander_core::residue::ResidueClass;

pub fn square_orbit(x: &BigRational, depth: usize) -> Vec<BigRational> {
    let mut out = vec![x.clone()];
    for _ in 0..depth {
        let last = out.last().unwrap();
        out.push(last * last);
    }
    out
}

/// Some `x^(2^m) = y^(2^n)` with `m, n ≤ depth`.
pub fn square_orbits_collide(x: &BigRational, y: &BigRational, depth: usize) -> bool {
    let (a, b) = (square_orbit(x, depth), square_orbit(y, depth));
    a.iter().any(|u| b.contains(u))
}

pub fn height_q(x: &BigRational) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

pub fn eval_int_poly(coeffs: &[i64], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(c.into()))
}

pub fn is_prime_oracle(n: &BigInt) -> bool {
    let n: u64 = n.try_into().unwrap();
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// `ln 2 = Σ 1/(k 2^k)`; the tail after `n` terms is below `1/((n+1) 2^n)`.
pub fn ln2_enclosure(n: u32) -> (BigRational, BigRational) {
    let mut s = BigRational::zero();
    for k in 1..=n {
        s += BigRational::new(BigInt::one(), BigInt::from(k) * BigInt::from(2).pow(k));
    }
    let tail = BigRational::new(BigInt::one(), BigInt::from(n + 1) * BigInt::from(2).pow(n));
    (s.clone(), s + tail)
}

/// Every polynomial over `F_p` of degree at most `max_deg`, zero included.
pub fn all_polys(p: u64, max_deg: usize) -> Vec<ResPoly> {
    let field = BaseField::Prime(p);
    let n = (p as usize).pow(max_deg as u32 + 1);
    (0..n)
        .map(|mut code| {
            let coeffs = (0..=max_deg)
                .map(|_| {
                    let v = (code % p as usize) as u64;
                    code /= p as usize;
                    ResidueScalar::Prime { value: v, modulus: p }
                })
                .collect();
            ResPoly::new(field, coeffs)
        })
        .collect()
}

pub fn random_fp_poly(rng: &mut impl Rng, p: u64, deg: usize) -> ResPoly {
    let coeffs = (0..=deg).map(|_| ResidueScalar::Prime { value: rng.gen_range(0..p), modulus: p }).collect();
    ResPoly::new(BaseField::Prime(p), coeffs)
}

pub fn gcd_is_constant(a: &ResPoly, b: &ResPoly) -> bool {
    poly_gcd(a, b).unwrap().is_constant()
}

fn fp_value(c: &ResidueScalar) -> u64 {
    match c {
        ResidueScalar::Prime { value, .. } => *value,
        _ => unreachable!(),
    }
}

fn fp_coeffs(q: &ResPoly) -> Vec<u64> {
    q.coeffs().iter().map(fp_value).collect()
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Euclid on coefficient vectors in `u64`.
pub fn fp_coprime(p: u64, a: &ResPoly, b: &ResPoly) -> bool {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let (mut a, mut b) = (fp_coeffs(a), fp_coeffs(b));
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(b[b.len() - 1], p - 2, p);
        while a.len() >= b.len() {
            let q = a[a.len() - 1] * inv % p;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + p * p - q * c) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// A rational map over `F_p` on `P¹(F_p)`, evaluated in `u64`.
pub struct FpMap {
    p: u64,
    num: Vec<u64>,
    den: Vec<u64>,
}

impl FpMap {
    pub fn new(p: u64, num: &ResPoly, den: &ResPoly) -> Self {
        FpMap { p, num: fp_coeffs(num), den: fp_coeffs(den) }
    }

    pub fn points(&self) -> Vec<P1<u64>> {
        (0..self.p).map(P1::Finite).chain([P1::Infinity]).collect()
    }

    fn horner(&self, c: &[u64], x: u64) -> u64 {
        c.iter().rev().fold(0, |acc, &a| (acc * x + a) % self.p)
    }

    fn div(&self, a: u64, b: u64) -> P1<u64> {
        if b == 0 {
            P1::Infinity
        } else {
            P1::Finite(a * pow_mod(b, self.p - 2, self.p) % self.p)
        }
    }

    pub fn apply(&self, x: &P1<u64>) -> P1<u64> {
        match *x {
            P1::Finite(v) => {
                let (f, g) = (self.horner(&self.num, v), self.horner(&self.den, v));
                assert!(f != 0 || g != 0, "coprime polynomials vanish together");
                self.div(f, g)
            }
            P1::Infinity => match self.num.len().cmp(&self.den.len()) {
                std::cmp::Ordering::Greater => P1::Infinity,
                std::cmp::Ordering::Less => P1::Finite(0),
                std::cmp::Ordering::Equal => self.div(self.num[self.num.len() - 1], self.den[self.den.len() - 1]),
            },
        }
    }

    /// `(tail, period)` of the orbit of `x`, by first repetition.
    pub fn tail_period(&self, x: &P1<u64>) -> (usize, usize) {
        const CAP: usize = 64;
        assert!((self.p as usize) < CAP, "small fields only");
        let mut orbit = [P1::Infinity; CAP];
        orbit[0] = *x;
        let mut len = 1;
        loop {
            let next = self.apply(&orbit[len - 1]);
            if let Some(j) = orbit[..len].iter().position(|y| *y == next) {
                return (j, len - j);
            }
            orbit[len] = next;
            len += 1;
        }
    }
}

/// Distinct roots over the algebraic closure of a nonzero polynomial over `F_p`.
pub fn distinct_roots(p: &ResPoly) -> usize {
    if p.deg() == 0 {
        return 0;
    }
    let q = p.field().characteristic() as usize;
    let dp = p.derivative();
    let g = if dp.is_zero() { p.monic() } else { poly_gcd(p, &dp).unwrap() };
    let w = p.exact_div(&g).unwrap();
    let mut h = g;
    loop {
        let c = poly_gcd(&h, &w).unwrap();
        if c.is_constant() {
            break;
        }
        h = h.exact_div(&c).unwrap();
    }
    let root = if h.deg() == 0 {
        0
    } else {
        let coeffs: Vec<_> = (0..=h.deg() / q).map(|i| h.coeff(i * q)).collect();
        distinct_roots(&ResPoly::new(p.field(), coeffs))
    };
    w.deg() + root
}

pub fn oracle_preimage_count(num: &ResPoly, den: &ResPoly, seed: &ResidueClass) -> usize {
    let d = num.deg().max(den.deg());
    let pulled = match seed {
        ResidueClass::Point(a) => num - &den.scale(a),
        ResidueClass::Infinity => den.clone(),
        ResidueClass::Galois(_) => unreachable!(),
    };
    distinct_roots(&pulled) + usize::from(pulled.deg() < d)
}

/// `c·(1 + bT)/(1 + eT)` with `c` a nonzero constant.
pub fn random_unit(rng: &mut impl Rng, field: BaseField) -> ValuedScalar {
    let r = |rng: &mut dyn rand::RngCore, lo: i64, hi: i64| rng.gen_range(lo..=hi);
    let c = loop {
        let c = match field {
            BaseField::Rational => ResidueScalar::from_ratio(r(rng, -9, 9), r(rng, 1, 5)),
            BaseField::Prime(p) => ResidueScalar::Prime { value: rng.gen_range(0..p), modulus: p },
        };
        if !c.is_zero() {
            break c;
        }
    };
    let num = ResPoly::new(field, vec![c.clone(), c.mul(&ResidueScalar::from_i64(field, r(rng, -3, 3)))]);
    let den = ResPoly::new(field, vec![ResidueScalar::one(field), ResidueScalar::from_i64(field, r(rng, -3, 3))]);
    ValuedScalar::new(num, den).unwrap()
}

pub fn random_kpoly(rng: &mut impl Rng, field: BaseField, deg: usize) -> KPoly {
    let coeffs = (0..=deg)
        .map(|_| {
            if rng.gen_bool(0.3) {
                ValuedScalar::zero(field)
            } else {
                random_unit(rng, field).shift(rng.gen_range(-2..=2))
            }
        })
        .collect();
    KPoly::new(field, coeffs)
}

fn slope_ceil(n: i64, d: i64) -> i64 {
    Integer::div_ceil(&n, &d)
}

pub fn oracle_disk_contains(disk: &Disk, x: &ValuedScalar) -> bool {
    match x.sub(&disk.center).valuation().finite() {
        None => true,
        Some(v) => {
            let v = num_rational::Ratio::from_integer(v);
            v > disk.radius_valuation || (disk.kind == DiskKind::Closed && v == disk.radius_valuation)
        }
    }
}

/// `center + T^k·u` with `k` the smallest admissible integer valuation.
pub fn sample_in_disk(rng: &mut impl Rng, disk: &Disk) -> ValuedScalar {
    let s = disk.radius_valuation;
    let k = match disk.kind {
        DiskKind::Closed => slope_ceil(*s.numer(), *s.denom()),
        DiskKind::Open => s.floor().to_integer() + 1,
    };
    let k = k + i64::from(rng.gen_bool(0.15));
    disk.center.add(&random_unit(rng, disk.center.field()).shift(k))
}
