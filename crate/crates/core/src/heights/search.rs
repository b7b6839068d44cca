use std::collections::HashMap;

use num_integer::Integer;
use num_rational::BigRational;

use crate::algebra::P1;
use crate::error::{Error, Result};
use crate::limits::bit_budget;
use crate::ratmap::ReducedMap;

use super::canonical::{compare_orbits, interval_from, preperiodicity_test, CanonicalHeightInterval, GrandOrbitVerdict};
use super::degree_one::{degree_one_form, translation_family, DegreeOneForm, RationalMobius};
use super::gap::height_gap_constants;
use super::point::{orbit, q_to_residue, IntMap, ProjPoint};

/// Largest standard height tried before giving up.
pub const MAX_SEARCH_HEIGHT: i64 = 60;
/// Collision search depth between candidate orbits.
pub const REPRESENTATIVE_DEPTH: usize = 10;
/// Candidate orbits are cut once a point reaches this many bits.
const CANDIDATE_BITS: u64 = 20_000;
const MAX_POOL: usize = 400;

/// Rational points ordered by standard height; integers first within each
/// height, then positive before negative.
pub fn points_by_height(max_height: i64) -> impl Iterator<Item = P1<BigRational>> {
    let q = |m: i64, n: i64| P1::Finite(BigRational::new(m.into(), n.into()));
    let first = vec![q(0, 1), q(1, 1), q(-1, 1), P1::Infinity];
    let rest = (2..=max_height).flat_map(move |h| {
        let mut v = vec![q(h, 1), q(-h, 1)];
        for k in 1..h {
            if k.gcd(&h) != 1 {
                continue;
            }
            v.extend([q(k, h), q(-k, h)]);
            if k > 1 {
                v.extend([q(h, k), q(-h, k)]);
            }
        }
        v
    });
    first.into_iter().chain(rest)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub i: usize,
    pub j: usize,
    pub verdict: GrandOrbitVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representatives {
    pub points: Vec<P1<BigRational>>,
    /// Enclosures of `ĥ`; empty for degree-one maps.
    pub intervals: Vec<CanonicalHeightInterval>,
    pub pairs: Vec<PairCertificate>,
}

struct Candidate {
    point: P1<BigRational>,
    orbit: Vec<ProjPoint>,
}

/// `n` rational points, pairwise certified to lie in distinct wandering
/// grand orbits of `φ̄`.
pub fn wandering_representatives(map: &ReducedMap, n: usize) -> Result<Representatives> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one representative".into()));
    }
    if map.degree() == 1 {
        return degree_one_representatives(map, n);
    }
    let c = height_gap_constants(map)?;
    if !c.verified {
        return Err(Error::HypothesesNotMet("height constants failed the sample check".into()));
    }
    let im = IntMap::new(map)?;
    let cap = CANDIDATE_BITS.min(bit_budget());
    let mut pool: Vec<Candidate> = Vec::new();
    let mut cache: HashMap<(usize, usize), GrandOrbitVerdict> = HashMap::new();
    for x in points_by_height(MAX_SEARCH_HEIGHT) {
        if !preperiodicity_test(map, &q_to_residue(&x)).is_wandering() {
            continue;
        }
        let (o, _) = orbit(&im, &ProjPoint::from_q(&x), REPRESENTATIVE_DEPTH, cap);
        let k = pool.len();
        pool.push(Candidate { point: x, orbit: o });
        let mut verdict = |i: usize, j: usize| -> GrandOrbitVerdict {
            let key = (i.min(j), i.max(j));
            cache
                .entry(key)
                .or_insert_with(|| {
                    let (a, b) = (&pool[key.0], &pool[key.1]);
                    compare_orbits(map, &a.point, &b.point, &a.orbit, &b.orbit, &c)
                })
                .clone()
        };
        if (0..k).any(|i| matches!(verdict(i, k), GrandOrbitVerdict::SameOrbit { .. })) {
            pool.pop();
            cache.retain(|&(_, j), _| j < k);
            continue;
        }
        let mut chosen = vec![k];
        for i in 0..k {
            if chosen.len() == n {
                break;
            }
            if chosen.iter().all(|&j| verdict(i, j).is_certified()) {
                chosen.push(i);
            }
        }
        if chosen.len() == n {
            chosen.sort_unstable();
            let mut pairs = Vec::new();
            let mut depth = 0;
            for (a, &i) in chosen.iter().enumerate() {
                for (b, &j) in chosen.iter().enumerate().skip(a + 1) {
                    let v = verdict(i, j);
                    if let GrandOrbitVerdict::DistinctCertified(super::DistinctEvidence::Window { depth: dd, .. }) = &v {
                        depth = depth.max(*dd);
                    }
                    pairs.push(PairCertificate { i: a, j: b, verdict: v });
                }
            }
            let intervals = chosen
                .iter()
                .map(|&i| {
                    let o = &pool[i].orbit;
                    interval_from(&o[depth.min(o.len() - 1)].height(), depth.min(o.len() - 1), &c)
                })
                .collect();
            let points = chosen.iter().map(|&i| pool[i].point.clone()).collect();
            return Ok(Representatives { points, intervals, pairs });
        }
        if pool.len() >= MAX_POOL {
            break;
        }
    }
    Err(Error::SearchBudgetExhausted(format!(
        "no {n} pairwise certified points up to height {MAX_SEARCH_HEIGHT}"
    )))
}

fn pull_back(conj: &RationalMobius, w: BigRational) -> P1<BigRational> {
    conj.inverse().apply(&P1::Finite(w))
}

fn degree_one_representatives(map: &ReducedMap, n: usize) -> Result<Representatives> {
    let ws: (RationalMobius, Vec<BigRational>) = match degree_one_form(map)? {
        DegreeOneForm::Translation { conjugator, beta } => (conjugator, translation_family(&beta, n)),
        DegreeOneForm::Scaling { conjugator, lambda } => {
            let primes = super::degree_one_family(&lambda, n)?;
            (conjugator, primes.into_iter().map(BigRational::from_integer).collect())
        }
        DegreeOneForm::FiniteOrder(j) => {
            return Err(Error::HypothesesNotMet(format!("map has finite order {j}")));
        }
        DegreeOneForm::IrrationalFixedPoints => {
            return Err(Error::HypothesesNotMet("fixed points are not rational".into()));
        }
    };
    let (conj, ws) = ws;
    let points: Vec<P1<BigRational>> = ws.into_iter().map(|w| pull_back(&conj, w)).collect();
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let verdict = super::distinct_grand_orbit_certificate(map, &points[i], &points[j], 0)?;
            pairs.push(PairCertificate { i, j, verdict });
        }
    }
    Ok(Representatives { points, intervals: Vec::new(), pairs })
}
