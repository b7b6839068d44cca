mod oracle;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wander_core::algebra::{poly_gcd, rational_roots, resultant, BaseField, ExtInt, Poly, ResidueScalar, Scalar, ValuedScalar};
use wander_core::ratmap::ResPoly;

use oracle::{random_fp_poly, random_unit};

const Q: BaseField = BaseField::Rational;

fn field_of(code: u8) -> BaseField {
    match code % 4 {
        0 | 1 => Q,
        2 => BaseField::Prime(3),
        _ => BaseField::Prime(7),
    }
}

fn valued(seed: u64, field: BaseField, shift: i64) -> ValuedScalar {
    random_unit(&mut ChaCha8Rng::seed_from_u64(seed), field).shift(shift)
}

fn qpoly(coeffs: &[i64]) -> ResPoly {
    ResPoly::from_i64s(Q, coeffs)
}

proptest! {
    #[test]
    fn valuation_is_ultrametric(a in any::<u64>(), b in any::<u64>(), va in -4i64..5, vb in -4i64..5, f in any::<u8>()) {
        let field = field_of(f);
        let (x, y) = (valued(a, field, va), valued(b, field, vb));
        let (ex, ey) = (x.valuation().finite().unwrap(), y.valuation().finite().unwrap());
        prop_assert_eq!(x.mul(&y).valuation(), ExtInt::Finite(ex + ey));
        let s = x.add(&y).valuation();
        prop_assert!(s >= ExtInt::Finite(ex.min(ey)));
        if ex != ey {
            prop_assert_eq!(s, ExtInt::Finite(ex.min(ey)));
        }
    }

    #[test]
    fn residue_is_a_ring_map(a in any::<u64>(), b in any::<u64>(), va in 0i64..3, vb in 0i64..3, f in any::<u8>()) {
        let field = field_of(f);
        let (x, y) = (valued(a, field, va), valued(b, field, vb));
        let (rx, ry) = (x.residue().unwrap(), y.residue().unwrap());
        prop_assert_eq!(x.add(&y).residue().unwrap(), rx.add(&ry));
        prop_assert_eq!(x.mul(&y).residue().unwrap(), rx.mul(&ry));
    }

    #[test]
    fn gcd_divides_and_is_greatest(
        common in prop::collection::vec(-5i64..6, 1..4),
        p in prop::collection::vec(-5i64..6, 1..4),
        q in prop::collection::vec(-5i64..6, 1..4),
    ) {
        let (c, p, q) = (qpoly(&common), qpoly(&p), qpoly(&q));
        prop_assume!(!c.is_zero() && !p.is_zero() && !q.is_zero());
        let (a, b) = (&c * &p, &c * &q);
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        p in prop::collection::vec(-4i64..5, 2..5),
        q in prop::collection::vec(-4i64..5, 2..5),
        share in any::<bool>(),
    ) {
        let (mut p, mut q) = (qpoly(&p), qpoly(&q));
        prop_assume!(!p.is_zero() && !q.is_zero());
        if share {
            let lin = qpoly(&[1, 1]);
            p = &p * &lin;
            q = &q * &lin;
        }
        let r = resultant(&p, &q).unwrap();
        let g = poly_gcd(&p, &q).unwrap();
        prop_assert_eq!(r.is_zero(), g.deg() >= 1);
    }

    #[test]
    fn rational_roots_over_fp_match_evaluation(seed in any::<u64>(), pi in 0usize..11, deg in 1usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31][pi];
        let poly = random_fp_poly(&mut ChaCha8Rng::seed_from_u64(seed), p, deg);
        prop_assume!(!poly.is_zero());
        let found = rational_roots(&poly).unwrap();
        for v in 0..p {
            let x = ResidueScalar::Prime { value: v, modulus: p };
            // multiplicity by repeated division by (z - x)
            let lin = Poly::new(poly.field(), vec![x.neg(), ResidueScalar::one(poly.field())]);
            let mut m = 0;
            let mut rest = poly.clone();
            while rest.eval(&x).is_zero() && !rest.is_zero() {
                rest = rest.exact_div(&lin).unwrap();
                m += 1;
            }
            let listed = found.roots.iter().find(|(r, _)| *r == x).map(|(_, k)| *k).unwrap_or(0);
            prop_assert_eq!(listed, m, "root {} of {:?}", v, poly);
        }
    }
}
