mod oracle;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wander_core::algebra::{BaseField, Poly, ResidueScalar, Scalar, ValuedScalar, P1};
use wander_core::fixtures::fixture;
use wander_core::ratmap::{iterate, reduce, Classification, KPoly, RatMap, ReducedMap};
use wander_core::residue::{
    class_image, class_of, class_preimages, julia_class_growth, separability_decompose, wandering_domain_certificates,
    ClassImage, GaloisClass, JuliaConclusion, PointSet, ResidueClass,
};
use wander_core::Error;

use oracle::{oracle_preimage_count, random_kpoly};

const Q: BaseField = BaseField::Rational;

const FIXTURES: [&str; 9] =
    ["intro", "cyclotomic:2", "cyclotomic:3", "ex2.1:2", "ex2.4:3", "ex6.1", "ex6.2", "ex6.3", "ex6.4"];

fn field_of(code: u8) -> BaseField {
    [Q, BaseField::Prime(2), BaseField::Prime(3), BaseField::Prime(5), BaseField::Prime(7)][code as usize % 5]
}

fn random_map(rng: &mut ChaCha8Rng, field: BaseField) -> Option<RatMap> {
    let (df, dg) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let f = random_kpoly(rng, field, df);
    let g = random_kpoly(rng, field, dg);
    RatMap::new(f, g).ok()
}

fn random_class(rng: &mut ChaCha8Rng, field: BaseField) -> ResidueClass {
    if rng.gen_bool(0.15) {
        return ResidueClass::Infinity;
    }
    let v = match field {
        BaseField::Rational => ResidueScalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        _ => ResidueScalar::from_i64(field, rng.gen_range(0..field.characteristic() as i64)),
    };
    ResidueClass::Point(v)
}

/// An irreducible quadratic, so a class of two conjugate points.
fn quadratic_class(field: BaseField) -> ResidueClass {
    let cs: &[i64] = match field.characteristic() {
        2 => &[1, 1, 1],
        5 => &[2, 0, 1],
        _ => &[1, 0, 1],
    };
    ResidueClass::Galois(GaloisClass::new(Poly::from_i64s(field, cs)).unwrap())
}

fn constant_lift(c: &ResidueClass) -> P1<ValuedScalar> {
    match c {
        ResidueClass::Point(a) => P1::Finite(ValuedScalar::from_residue(a.clone())),
        ResidueClass::Infinity => P1::Infinity,
        ResidueClass::Galois(_) => panic!("no rational lift"),
    }
}

#[test]
fn image_of_image_matches_the_second_iterate() {
    let mut checked = 0;
    for name in FIXTURES {
        let phi = fixture(name, Q).unwrap().map;
        let r1 = reduce(&phi);
        if r1.classification == Classification::Trivial {
            continue;
        }
        let r2 = reduce(&iterate(&phi, 2).unwrap());
        let classes = (-3..=3).map(|n| ResidueClass::Point(ResidueScalar::from_i64(Q, n))).chain([ResidueClass::Infinity]);
        for c in classes {
            if r1.is_bad(&c) {
                continue;
            }
            let ClassImage::Class(c1) = class_image(&r1, &c).unwrap() else { panic!("{name}: {c}") };
            if r1.is_bad(&c1) {
                continue;
            }
            let twice = class_image(&r1, &c1).unwrap();
            assert_eq!(class_image(&r2, &c).unwrap(), twice, "{name} at {c}");
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn fixture_seed_sets_grow_under_pullback() {
    let pool: Vec<ResidueClass> = [0, 1, -1, 2]
        .iter()
        .map(|&n| ResidueClass::Point(ResidueScalar::from_i64(Q, n)))
        .chain([ResidueClass::Infinity])
        .collect();
    for name in FIXTURES {
        let r = reduce(&fixture(name, Q).unwrap().map);
        let Ok(map) = r.reduced() else { continue };
        if map.degree() < 2 {
            continue;
        }
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                for k in j + 1..pool.len() {
                    let seeds = PointSet::from_classes(Q, &[pool[i].clone(), pool[j].clone(), pool[k].clone()]).unwrap();
                    assert!(seeds.preimage(map).unwrap().count() > 3, "{name}");
                }
            }
        }
    }
}

#[test]
fn finite_residue_fields_never_certify() {
    for p in [2u64, 3, 5, 7] {
        let field = BaseField::Prime(p);
        let t = ValuedScalar::uniformizer(field);
        for b in 0..p as i64 {
            for e in 0..p as i64 {
                for c in 0..p as i64 {
                    // z² + b·z + e + c·T
                    let k = |n: i64| ValuedScalar::from_residue(ResidueScalar::from_i64(field, n));
                    let f = KPoly::new(field, vec![k(e).add(&k(c).mul(&t)), k(b), k(1)]);
                    let phi = RatMap::polynomial(f).unwrap();
                    let got = wandering_domain_certificates(&phi, 2, 3);
                    assert!(matches!(got, Err(Error::HypothesesNotMet(_))), "p = {p}: {got:?}");
                }
            }
        }
        for name in FIXTURES {
            let Ok(fx) = fixture(name, field) else { continue };
            let got = wandering_domain_certificates(&fx.map, 2, 3);
            assert!(matches!(got, Err(Error::HypothesesNotMet(_))), "{name} over F_{p}");
        }
    }
}

#[test]
fn certificate_orbits_revalidate() {
    for name in ["ex6.1", "cyclotomic:2"] {
        let phi = fixture(name, Q).unwrap().map;
        let certs = wandering_domain_certificates(&phi, 2, 4).unwrap();
        assert_eq!(certs.len(), 2);
        for cert in &certs {
            let mut x = constant_lift(cert.base_class());
            for entry in cert.orbit.entries.iter().take(3) {
                assert_eq!(class_of(&x), entry.class, "{name} step {}", entry.step);
                x = phi.eval(&x);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn preimage_multiplicities_sum_to_degree(seed in any::<u64>(), f in any::<u8>()) {
        let field = field_of(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(phi) = random_map(&mut rng, field) else { return Ok(()) };
        let r = reduce(&phi);
        let Ok(map) = r.reduced() else { return Ok(()) };
        let c = random_class(&mut rng, field);
        let pre = class_preimages(&r, &c).unwrap();
        prop_assert_eq!(pre.total_multiplicity(), map.degree());
        prop_assert_eq!(pre.count(), oracle_preimage_count(map.num(), map.den(), &c));
        let g = quadratic_class(field);
        prop_assert_eq!(class_preimages(&r, &g).unwrap().total_multiplicity(), 2 * map.degree());
    }

    #[test]
    fn julia_growth_is_monotone(seed in any::<u64>(), f in any::<u8>()) {
        let field = field_of(f);
        let Some(phi) = random_map(&mut ChaCha8Rng::seed_from_u64(seed), field) else { return Ok(()) };
        let Ok(g) = julia_class_growth(&phi, 2) else { return Ok(()) };
        prop_assert!(g.counts.windows(2).all(|w| w[0] <= w[1]), "{:?}", g.counts);
        if g.conclusion == JuliaConclusion::InfinitelyManyCertified {
            let points: usize = g.seeds.iter().map(|c| c.point_count()).sum();
            prop_assert!(points >= 3 && points == g.counts[0]);
            prop_assert!(g.separability.separable && g.separability.psi.degree() >= 2);
            prop_assert!(g.counts[1] > g.counts[0]);
        }
    }

    #[test]
    fn separable_fp_maps_grow_three_point_sets(seed in any::<u64>(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let field = BaseField::Prime(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (dn, dd) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let num = oracle::random_fp_poly(&mut rng, p, dn);
        let den = oracle::random_fp_poly(&mut rng, p, dd);
        let Some(map) = ReducedMap::new(num, den) else { return Ok(()) };
        let s = separability_decompose(&map).unwrap();
        prop_assume!(map.degree() >= 2 && s.frobenius_power == 0 && s.separable);
        let pts: Vec<ResidueClass> = (0..p as i64)
            .map(|v| ResidueClass::Point(ResidueScalar::from_i64(field, v)))
            .chain([ResidueClass::Infinity])
            .collect();
        let pick: Vec<usize> = rand::seq::index::sample(&mut rng, pts.len(), 3).into_vec();
        let seeds: Vec<ResidueClass> = pick.iter().map(|&i| pts[i].clone()).collect();
        let set = PointSet::from_classes(field, &seeds).unwrap();
        prop_assert!(set.preimage(&map).unwrap().count() > 3, "{:?} {:?}", map, seeds);
        let direct: usize = seeds.iter().map(|c| oracle_preimage_count(map.num(), map.den(), c)).sum();
        prop_assert_eq!(set.preimage(&map).unwrap().count(), direct);
    }
}
