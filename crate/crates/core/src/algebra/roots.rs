use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{poly_gcd, AlgebraError, BaseField, Poly, ResidueScalar, Scalar};

type KPoly = Poly<ResidueScalar>;

/// Roots of a polynomial that lie in the residue field, with multiplicity,
/// and the squarefree monic part carrying everything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(ResidueScalar, usize)>,
    pub cofactor: KPoly,
}

/// Product of the distinct monic irreducible factors.
pub fn radical(p: &KPoly) -> Result<KPoly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(KPoly::one(p.field()));
    }
    let dp = p.derivative();
    if dp.is_zero() {
        // only in characteristic p: p(z) = q(z^p) = (q^{1/p}(z))^p
        return radical(&pth_root(p));
    }
    let g = poly_gcd(p, &dp)?;
    let w = p.exact_div(&g)?.monic();
    if p.field().characteristic() == 0 || g.is_constant() {
        return Ok(w);
    }
    let r = radical(&g)?;
    let common = poly_gcd(&w, &r)?;
    Ok((&w * &r.exact_div(&common)?).monic())
}

fn pth_root(p: &KPoly) -> KPoly {
    let q = p.field().characteristic() as usize;
    let coeffs = p.coeffs().iter().step_by(q).cloned().collect();
    KPoly::new(p.field(), coeffs)
}

/// Roots in `k`: exhaustive scan over `F_p`, Sturm isolation over `Q`.
pub fn rational_roots(p: &KPoly) -> Result<RationalRoots, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let field = p.field();
    let rad = radical(p)?;
    let mut distinct = match field {
        BaseField::Prime(_) => {
            let elems = field.elements().expect("finite field");
            elems.into_iter().filter(|x| rad.eval(x).is_zero()).collect()
        }
        BaseField::Rational => rational_roots_q(&rad),
    };
    distinct.sort();
    let mut rest = p.clone();
    let mut roots = Vec::with_capacity(distinct.len());
    for r in distinct {
        let lin = KPoly::new(field, vec![r.neg(), ResidueScalar::one(field)]);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    Ok(RationalRoots { roots, cofactor: radical(&rest)? })
}

/// Content-free integer coefficients with positive leading term.
pub(crate) fn primitive_integer(p: &KPoly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients"))
        .collect();
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn rational_roots_q(squarefree: &KPoly) -> Vec<ResidueScalar> {
    let field = BaseField::Rational;
    let mut found = Vec::new();
    let mut s = squarefree.clone();
    'restart: loop {
        if s.deg() == 0 {
            return found;
        }
        if s.coeff(0).is_zero() {
            let zero = ResidueScalar::zero(field);
            found.push(zero);
            s = s.shift_down(1);
            continue;
        }
        if s.deg() == 1 {
            found.push(s.coeff(0).neg().div(&s.coeff(1)).expect("degree one"));
            return found;
        }
        let ints = primitive_integer(&s);
        let lc = ints.last().expect("nonzero").abs();
        let min_width = BigRational::new(BigInt::one(), &lc * &lc);
        let bound = cauchy_bound(&ints);
        let sturm = sturm_sequence(&s);
        let mut stack = vec![(-bound.clone(), bound.clone())];
        while let Some((a, b)) = stack.pop() {
            let count = variations(&sturm, &a) - variations(&sturm, &b);
            if count == 0 {
                continue;
            }
            if count == 1 && &b - &a < min_width {
                let cand = simplest_between(&a, &b);
                if eval_q(&s, &cand).is_zero() {
                    found.push(ResidueScalar::Rational(cand.clone()));
                    s = deflate(&s, cand);
                    continue 'restart;
                }
                continue;
            }
            let mid = (&a + &b) / BigInt::from(2);
            if eval_q(&s, &mid).is_zero() {
                found.push(ResidueScalar::Rational(mid.clone()));
                s = deflate(&s, mid);
                continue 'restart;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        return found;
    }
}

fn deflate(s: &KPoly, root: BigRational) -> KPoly {
    let field = BaseField::Rational;
    let lin = KPoly::new(field, vec![ResidueScalar::Rational(-root), ResidueScalar::one(field)]);
    s.exact_div(&lin).expect("linear divisor")
}

fn eval_q(s: &KPoly, x: &BigRational) -> BigRational {
    match s.eval(&ResidueScalar::Rational(x.clone())) {
        ResidueScalar::Rational(v) => v,
        ResidueScalar::Prime { .. } => unreachable!("rational polynomial"),
    }
}

fn cauchy_bound(ints: &[BigInt]) -> BigRational {
    let lc = ints.last().expect("nonzero").abs();
    let max = ints[..ints.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::new(max, lc) + BigRational::one()
}

fn sturm_sequence(s: &KPoly) -> Vec<KPoly> {
    let mut seq = vec![s.clone(), s.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            return seq;
        }
        seq.push(-&r);
    }
}

fn variations(seq: &[KPoly], x: &BigRational) -> i64 {
    let mut count = 0;
    let mut last = 0;
    for p in seq {
        let v = eval_q(p, x);
        let sign = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && sign != last {
            count += 1;
        }
        last = sign;
    }
    count
}

/// Rational of smallest denominator strictly between `a < b`.
pub(crate) fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_negative() && b.is_positive() {
        return BigRational::zero();
    }
    if !b.is_positive() {
        return -simplest_above(&-b, Some(&-a));
    }
    simplest_above(a, Some(b))
}

fn simplest_above(a: &BigRational, b: Option<&BigRational>) -> BigRational {
    let fl = a.floor();
    let next = &fl + BigRational::one();
    if b.is_none_or(|b| &next < b) {
        return next;
    }
    let b = b.expect("bounded");
    let hi = if *a == fl { None } else { Some((a - &fl).recip()) };
    let lo = (b - &fl).recip();
    fl + simplest_above(&lo, hi.as_ref()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseField = BaseField::Rational;

    fn qpoly(c: &[i64]) -> KPoly {
        KPoly::from_i64s(Q, c)
    }

    fn q(n: i64, d: i64) -> ResidueScalar {
        ResidueScalar::from_ratio(n, d)
    }

    #[test]
    fn radical_drops_repeated_factors() {
        // (z-1)^3 (z+2)
        let p = &qpoly(&[-1, 1]).pow(3) * &qpoly(&[2, 1]);
        assert_eq!(radical(&p).unwrap(), (&qpoly(&[-1, 1]) * &qpoly(&[2, 1])).monic());
    }

    #[test]
    fn radical_in_characteristic_p() {
        let f = BaseField::Prime(3);
        // z^3 - 1 = (z-1)^3 over F_3, times (z+1)
        let p = &KPoly::from_i64s(f, &[-1, 0, 0, 1]) * &KPoly::from_i64s(f, &[1, 1]);
        let expect = (&KPoly::from_i64s(f, &[-1, 1]) * &KPoly::from_i64s(f, &[1, 1])).monic();
        assert_eq!(radical(&p).unwrap(), expect);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2z-3)^2 (z+5) (z^2+z+1)
        let p = &(&qpoly(&[-3, 2]).pow(2) * &qpoly(&[5, 1])) * &qpoly(&[1, 1, 1]);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.roots, vec![(q(-5, 1), 1), (q(3, 2), 2)]);
        assert_eq!(r.cofactor, qpoly(&[1, 1, 1]));
    }

    #[test]
    fn close_rational_roots_are_separated() {
        // (100z - 1)(101z - 1)(z^2 - 2)
        let p = &(&qpoly(&[-1, 100]) * &qpoly(&[-1, 101])) * &qpoly(&[-2, 0, 1]);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.roots, vec![(q(1, 101), 1), (q(1, 100), 1)]);
        assert_eq!(r.cofactor, qpoly(&[-2, 0, 1]));
    }

    #[test]
    fn zero_root_and_bisection_hits() {
        // z (z - 1/2) (z + 1)
        let p = &(&qpoly(&[0, 1]) * &qpoly(&[-1, 2])) * &qpoly(&[1, 1]);
        let r = rational_roots(&p).unwrap();
        let xs: Vec<_> = r.roots.iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(xs, vec![q(-1, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn prime_field_roots() {
        let f = BaseField::Prime(7);
        // z^2 + z + 1 has roots 2, 4 mod 7
        let r = rational_roots(&KPoly::from_i64s(f, &[1, 1, 1])).unwrap();
        let xs: Vec<_> = r.roots.iter().map(|(x, m)| (x.to_string(), *m)).collect();
        assert_eq!(xs, vec![("2".to_string(), 1), ("4".to_string(), 1)]);
        assert!(r.cofactor.is_constant());
    }

    #[test]
    fn simplest_rational() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(simplest_between(&r(1, 3), &r(1, 2)), r(2, 5));
        assert_eq!(simplest_between(&r(-7, 3), &r(-2, 1)), r(-9, 4));
        assert_eq!(simplest_between(&r(-1, 2), &r(5, 1)), r(0, 1));
        assert_eq!(simplest_between(&r(3, 1), &r(13, 4)), r(16, 5));
    }
}
