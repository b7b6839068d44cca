use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{inverse_mod, BaseField, ResidueScalar, P1};
use crate::error::{Error, Result};
use crate::limits::bit_budget;
use crate::ratmap::ReducedMap;

use super::degree_one::{degree_one_form, discrete_log, DegreeOneForm};
use super::gap::{height_gap_constants, HeightGapConstants};
use super::logs::ln_bounds;
use super::point::{orbit, q_to_residue, residue_to_q, IntMap, ProjPoint};

/// Rigorous enclosure of `ĥ(x)` from the orbit point at `depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalHeightInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub depth: usize,
    /// `H(φ̄^depth(x))`.
    pub height: BigInt,
    /// The map's constants are 1, so `lo` and `hi` differ only by rounding.
    pub exact: bool,
}

fn require_degree_two(map: &ReducedMap) -> Result<()> {
    if map.degree() < 2 {
        return Err(Error::InvalidArgument("canonical heights need degree at least 2".into()));
    }
    Ok(())
}

fn checked_constants(map: &ReducedMap) -> Result<HeightGapConstants> {
    let c = height_gap_constants(map)?;
    if !c.verified {
        return Err(Error::HypothesesNotMet("height constants failed the sample check".into()));
    }
    Ok(c)
}

pub(crate) fn interval_from(height: &BigInt, depth: usize, c: &HeightGapConstants) -> CanonicalHeightInterval {
    let d = c.degree;
    let scale = BigRational::from_integer(BigInt::from(d).pow(depth as u32));
    let (l_lo, l_hi) = ln_bounds(height);
    let b = c.bound();
    let (lo, hi) = if b.is_one() {
        (l_lo / &scale, l_hi / &scale)
    } else {
        let e = ln_bounds(&b).1 / (&scale * BigRational::from_integer(BigInt::from(d - 1)));
        (l_lo / &scale - &e, l_hi / &scale + e)
    };
    CanonicalHeightInterval {
        lo: lo.max(BigRational::zero()),
        hi,
        depth,
        height: height.clone(),
        exact: b.is_one(),
    }
}

pub fn canonical_height_interval(map: &ReducedMap, x: &P1<BigRational>, depth: usize) -> Result<CanonicalHeightInterval> {
    require_degree_two(map)?;
    let c = checked_constants(map)?;
    let im = IntMap::new(map)?;
    let budget = bit_budget();
    let (o, cut) = orbit(&im, &ProjPoint::from_q(x), depth, budget);
    if cut {
        return Err(Error::OrbitOverflow(budget));
    }
    Ok(interval_from(&o[depth].height(), depth, &c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WanderingProof {
    /// `H(φ̄^step(x))^{d−1}` exceeds `bound`, forcing `ĥ(x) > 0`.
    HeightEscape { step: usize, height: BigInt, bound: BigInt },
    /// A degree-one map of infinite order moves every non-fixed point.
    InfiniteOrderMobius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preperiodicity {
    Preperiodic { tail: usize, period: usize },
    Wandering(WanderingProof),
    Inconclusive(String),
}

impl Preperiodicity {
    pub fn is_wandering(&self) -> bool {
        matches!(self, Preperiodicity::Wandering(_))
    }
}

/// Brent's cycle detection; the orbit must be finite.
fn walk<P: Clone + Eq>(start: P, step: impl Fn(&P) -> P) -> Preperiodicity {
    let (mut power, mut period) = (1usize, 1usize);
    let mut tortoise = start.clone();
    let mut hare = step(&start);
    while tortoise != hare {
        if power == period {
            tortoise = hare.clone();
            power *= 2;
            period = 0;
        }
        hare = step(&hare);
        period += 1;
    }
    let mut tortoise = start.clone();
    let mut hare = start;
    for _ in 0..period {
        hare = step(&hare);
    }
    let mut tail = 0;
    while tortoise != hare {
        tortoise = step(&tortoise);
        hare = step(&hare);
        tail += 1;
    }
    Preperiodicity::Preperiodic { tail, period }
}

/// Orbit walk over `P¹(F_p)` in machine arithmetic, with a visited table
/// indexed by point (`p` stands for infinity).
fn walk_fp(map: &ReducedMap, p: u64, start: &P1<ResidueScalar>) -> Preperiodicity {
    let residues = |q: &crate::ratmap::ResPoly| -> Vec<u64> {
        q.coeffs()
            .iter()
            .map(|c| match c {
                ResidueScalar::Prime { value, .. } => *value,
                ResidueScalar::Rational(_) => unreachable!("map over F_p"),
            })
            .collect()
    };
    let (num, den) = (residues(map.num()), residues(map.den()));
    let horner = |c: &[u64], x: u64| c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p);
    let quotient = |a: u64, b: u64| inverse_mod(b, p).map_or(p, |i| a * i % p);
    let at_infinity = match num.len().cmp(&den.len()) {
        std::cmp::Ordering::Greater => p,
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Equal => quotient(num[num.len() - 1], den[den.len() - 1]),
    };
    let step = |x: u64| if x == p { at_infinity } else { quotient(horner(&num, x), horner(&den, x)) };
    let mut cur = match start {
        P1::Finite(ResidueScalar::Prime { value, .. }) => *value,
        _ => p,
    };
    let mut seen = vec![usize::MAX; p as usize + 1];
    let mut i = 0;
    loop {
        let j = seen[cur as usize];
        if j != usize::MAX {
            return Preperiodicity::Preperiodic { tail: j, period: i - j };
        }
        seen[cur as usize] = i;
        cur = step(cur);
        i += 1;
    }
}

/// Decides whether `x` has a finite forward orbit under `φ̄`.
pub fn preperiodicity_test(map: &ReducedMap, x: &P1<ResidueScalar>) -> Preperiodicity {
    match map.field() {
        BaseField::Prime(p) => walk_fp(map, p, x),
        BaseField::Rational => {
            let Ok(xq) = residue_to_q(x) else {
                return Preperiodicity::Inconclusive("point is not rational".into());
            };
            if map.degree() == 1 {
                degree_one_preperiodicity(map, &xq)
            } else {
                match checked_constants(map) {
                    Ok(c) => height_walk(map, &xq, &c, bit_budget()),
                    Err(e) => Preperiodicity::Inconclusive(e.to_string()),
                }
            }
        }
    }
}

fn degree_one_preperiodicity(map: &ReducedMap, x: &P1<BigRational>) -> Preperiodicity {
    match degree_one_form(map) {
        Ok(DegreeOneForm::FiniteOrder(_)) => walk(q_to_residue(x), |p| map.eval(p)),
        Ok(_) => {
            if map.eval(&q_to_residue(x)) == q_to_residue(x) {
                Preperiodicity::Preperiodic { tail: 0, period: 1 }
            } else {
                Preperiodicity::Wandering(WanderingProof::InfiniteOrderMobius)
            }
        }
        Err(e) => Preperiodicity::Inconclusive(e.to_string()),
    }
}

fn height_walk(map: &ReducedMap, x: &P1<BigRational>, c: &HeightGapConstants, budget: u64) -> Preperiodicity {
    let im = IntMap::new(map).expect("rational map");
    let b = c.bound();
    let e = (c.degree - 1) as u32;
    let mut seen = HashMap::new();
    let mut cur = ProjPoint::from_q(x);
    let mut i = 0usize;
    loop {
        if let Some(&j) = seen.get(&cur) {
            return Preperiodicity::Preperiodic { tail: j, period: i - j };
        }
        let h = cur.height();
        if h.pow(e) > b {
            return Preperiodicity::Wandering(WanderingProof::HeightEscape { step: i, height: h, bound: b });
        }
        if cur.bits() > budget {
            return Preperiodicity::Inconclusive(format!("orbit exceeded {budget} bits"));
        }
        let next = im.apply(&cur);
        seen.insert(cur, i);
        cur = next;
        i += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctEvidence {
    /// At a common depth both enclosures sit in one window `(A, 2A]` and
    /// are disjoint. `powers` are `H^{d−1}` of the two orbit points.
    Window {
        depth: usize,
        bound: BigInt,
        powers: [BigInt; 2],
        intervals: Box<[CanonicalHeightInterval; 2]>,
    },
    /// Exact comparison in the normal coordinate of a degree-one map.
    ClosedForm(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrandOrbitVerdict {
    /// `φ̄^m(x) = φ̄^n(y)`.
    SameOrbit { m: usize, n: usize },
    DistinctCertified(DistinctEvidence),
    Inconclusive(String),
}

impl GrandOrbitVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, GrandOrbitVerdict::DistinctCertified(_))
    }
}

pub(crate) fn recheck_collision(map: &ReducedMap, x: &P1<BigRational>, y: &P1<BigRational>, m: usize, n: usize) -> bool {
    let run = |p: &P1<BigRational>, k: usize| {
        let mut cur = q_to_residue(p);
        for _ in 0..k {
            cur = map.eval(&cur);
        }
        cur
    };
    run(x, m) == run(y, n)
}

/// Earliest `(m, n)` by `m`, then `n`, with equal orbit points.
pub(crate) fn find_collision(ox: &[ProjPoint], oy: &[ProjPoint]) -> Option<(usize, usize)> {
    let mut first = HashMap::new();
    for (n, p) in oy.iter().enumerate() {
        first.entry(p).or_insert(n);
    }
    ox.iter().enumerate().find_map(|(m, p)| first.get(p).map(|&n| (m, n)))
}

/// Window test on two orbits walked to a common depth.
pub(crate) fn window_certificate(ox: &[ProjPoint], oy: &[ProjPoint], c: &HeightGapConstants) -> Option<DistinctEvidence> {
    let b = c.bound();
    let e = (c.degree - 1) as u32;
    let (b2, b3) = (&b * &b, &b * &b * &b);
    for depth in 0..ox.len().min(oy.len()) {
        let (hx, hy) = (ox[depth].height(), oy[depth].height());
        let (px, py) = (hx.pow(e), hy.pow(e));
        let disjoint = &py * &b2 < px || &px * &b2 < py;
        let window = &px * &b3 < &py * &py && &py * &b3 < &px * &px;
        if disjoint && window {
            return Some(DistinctEvidence::Window {
                depth,
                bound: b,
                intervals: Box::new([interval_from(&hx, depth, c), interval_from(&hy, depth, c)]),
                powers: [px, py],
            });
        }
    }
    None
}

/// Collision search to `search_depth`, then the height window argument.
pub fn distinct_grand_orbit_certificate(
    map: &ReducedMap,
    x: &P1<BigRational>,
    y: &P1<BigRational>,
    search_depth: usize,
) -> Result<GrandOrbitVerdict> {
    if map.degree() == 1 {
        return degree_one_grand_orbit(map, x, y);
    }
    let c = checked_constants(map)?;
    let im = IntMap::new(map)?;
    let budget = bit_budget();
    let (ox, _) = orbit(&im, &ProjPoint::from_q(x), search_depth, budget);
    let (oy, _) = orbit(&im, &ProjPoint::from_q(y), search_depth, budget);
    Ok(compare_orbits(map, x, y, &ox, &oy, &c))
}

pub(crate) fn compare_orbits(
    map: &ReducedMap,
    x: &P1<BigRational>,
    y: &P1<BigRational>,
    ox: &[ProjPoint],
    oy: &[ProjPoint],
    c: &HeightGapConstants,
) -> GrandOrbitVerdict {
    if let Some((m, n)) = find_collision(ox, oy) {
        if recheck_collision(map, x, y, m, n) {
            return GrandOrbitVerdict::SameOrbit { m, n };
        }
        return GrandOrbitVerdict::Inconclusive("collision failed the direct re-check".into());
    }
    match window_certificate(ox, oy, c) {
        Some(ev) => GrandOrbitVerdict::DistinctCertified(ev),
        None => GrandOrbitVerdict::Inconclusive("no common window within the searched depth".into()),
    }
}

fn degree_one_grand_orbit(map: &ReducedMap, x: &P1<BigRational>, y: &P1<BigRational>) -> Result<GrandOrbitVerdict> {
    let same = |m: usize, n: usize| {
        if recheck_collision(map, x, y, m, n) {
            GrandOrbitVerdict::SameOrbit { m, n }
        } else {
            GrandOrbitVerdict::Inconclusive("collision failed the direct re-check".into())
        }
    };
    let split = |k: i64| if k >= 0 { (0, k as usize) } else { ((-k) as usize, 0) };
    match degree_one_form(map)? {
        DegreeOneForm::Translation { conjugator, beta } => {
            let (P1::Finite(wx), P1::Finite(wy)) = (conjugator.apply(x), conjugator.apply(y)) else {
                return Ok(GrandOrbitVerdict::Inconclusive("a point is the fixed point".into()));
            };
            let k = (&wx - &wy) / &beta;
            if k.is_integer() {
                let k: i64 = k.to_integer().try_into().map_err(|_| Error::OrbitOverflow(64))?;
                let (m, n) = split(k);
                return Ok(same(m, n));
            }
            Ok(GrandOrbitVerdict::DistinctCertified(DistinctEvidence::ClosedForm(format!(
                "translation by {beta}: difference {} is not a multiple",
                wx - wy
            ))))
        }
        DegreeOneForm::Scaling { conjugator, lambda } => {
            let (wx, wy) = (conjugator.apply(x), conjugator.apply(y));
            let (P1::Finite(wx), P1::Finite(wy)) = (wx, wy) else {
                return Ok(GrandOrbitVerdict::Inconclusive("a point is a fixed point".into()));
            };
            if wx.is_zero() || wy.is_zero() {
                return Ok(GrandOrbitVerdict::Inconclusive("a point is a fixed point".into()));
            }
            match discrete_log(&lambda, &(&wx / &wy)) {
                Some(k) => {
                    let (m, n) = split(k);
                    Ok(same(m, n))
                }
                None => Ok(GrandOrbitVerdict::DistinctCertified(DistinctEvidence::ClosedForm(format!(
                    "scaling by {lambda}: ratio {} is not a power",
                    wx / wy
                )))),
            }
        }
        DegreeOneForm::FiniteOrder(_) => Ok(GrandOrbitVerdict::Inconclusive("map has finite order".into())),
        DegreeOneForm::IrrationalFixedPoints => {
            Ok(GrandOrbitVerdict::Inconclusive("fixed points are not rational".into()))
        }
    }
}

/// Why a forward orbit never meets a target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailProof {
    /// The orbit closed up without meeting a target.
    FiniteOrbit { steps: usize },
    /// From `step` on the canonical height exceeds every target's.
    HeightEscape { step: usize, height: BigInt },
    ClosedForm,
}

/// `Ok(proof)` if the orbit of `x` never meets `targets`, `Err(k)` if it
/// first does at step `k`.
pub(crate) fn orbit_avoids(
    map: &ReducedMap,
    x: &P1<ResidueScalar>,
    targets: &[P1<ResidueScalar>],
) -> Result<std::result::Result<TailProof, usize>> {
    if let Some(k) = finite_walk_hit(map, x, targets, map.field() == BaseField::Rational && map.degree() >= 2)? {
        return Ok(k);
    }
    // degree one over Q with an infinite forward orbit
    let xq = residue_to_q(x)?;
    for t in targets {
        if t == x {
            return Ok(Err(0));
        }
        let tq = residue_to_q(t)?;
        if map.eval(t) == *t {
            continue;
        }
        match degree_one_grand_orbit(map, &xq, &tq)? {
            GrandOrbitVerdict::SameOrbit { m, n: 0 } => return Ok(Err(m)),
            GrandOrbitVerdict::SameOrbit { .. } | GrandOrbitVerdict::DistinctCertified(_) => {}
            GrandOrbitVerdict::Inconclusive(why) => return Err(Error::HypothesesNotMet(why)),
        }
    }
    Ok(Ok(TailProof::ClosedForm))
}

/// Walks the orbit until it repeats, meets a target, or (with `heights`)
/// escapes above every target. Returns `None` when none of these settles
/// the question, which only happens for degree one over Q.
fn finite_walk_hit(
    map: &ReducedMap,
    x: &P1<ResidueScalar>,
    targets: &[P1<ResidueScalar>],
    heights: bool,
) -> Result<Option<std::result::Result<TailProof, usize>>> {
    if map.field() == BaseField::Rational && !heights {
        let finite_order = matches!(degree_one_form(map)?, DegreeOneForm::FiniteOrder(_));
        if !finite_order && map.eval(x) != *x {
            return Ok(None);
        }
    }
    if !heights {
        let mut seen = std::collections::HashSet::new();
        let mut cur = x.clone();
        let mut i = 0usize;
        while seen.insert(cur.clone()) {
            if targets.contains(&cur) {
                return Ok(Some(Err(i)));
            }
            cur = map.eval(&cur);
            i += 1;
        }
        return Ok(Some(Ok(TailProof::FiniteOrbit { steps: i })));
    }
    let c = checked_constants(map)?;
    let e = (c.degree - 1) as u32;
    let b2 = c.bound() * c.bound();
    let mut goal = BigInt::zero();
    let mut target_pts = Vec::new();
    for t in targets {
        let p = ProjPoint::from_q(&residue_to_q(t)?);
        let lim = p.height().pow(e) * &b2;
        if lim > goal {
            goal = lim;
        }
        target_pts.push(p);
    }
    let im = IntMap::new(map)?;
    let budget = bit_budget();
    let mut seen = HashMap::new();
    let mut cur = ProjPoint::from_q(&residue_to_q(x)?);
    let mut i = 0usize;
    loop {
        if target_pts.contains(&cur) {
            return Ok(Some(Err(i)));
        }
        if seen.contains_key(&cur) {
            return Ok(Some(Ok(TailProof::FiniteOrbit { steps: i })));
        }
        let h = cur.height();
        if h.pow(e) > goal {
            return Ok(Some(Ok(TailProof::HeightEscape { step: i, height: h })));
        }
        if cur.bits() > budget {
            return Err(Error::OrbitOverflow(budget));
        }
        let next = im.apply(&cur);
        seen.insert(cur, i);
        cur = next;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::ResPoly;
    use num_traits::ToPrimitive;

    const Q: BaseField = BaseField::Rational;

    fn poly_map(cs: &[i64]) -> ReducedMap {
        ReducedMap::polynomial(ResPoly::from_i64s(Q, cs)).unwrap()
    }

    fn pt(n: i64) -> P1<BigRational> {
        P1::Finite(BigRational::from_integer(n.into()))
    }

    fn rpt(field: BaseField, n: i64) -> P1<ResidueScalar> {
        P1::Finite(field.integer(&n.into()))
    }

    #[test]
    fn pure_power_interval_is_degenerate() {
        let sq = poly_map(&[0, 0, 1]);
        for depth in [0, 3, 6] {
            let iv = canonical_height_interval(&sq, &pt(2), depth).unwrap();
            assert!(iv.exact);
            assert!(&iv.hi - &iv.lo < BigRational::new(1.into(), BigInt::one() << 100));
            let ln2 = 2f64.ln();
            assert!((iv.lo.to_f64().unwrap() - ln2).abs() < 1e-12);
        }
    }

    #[test]
    fn z2_plus_1_center() {
        let iv = canonical_height_interval(&poly_map(&[1, 0, 1]), &pt(1), 4).unwrap();
        assert_eq!(iv.height, BigInt::from(677));
        let truth = 677f64.ln() / 16.0;
        assert!(iv.lo.to_f64().unwrap() <= truth && truth <= iv.hi.to_f64().unwrap());
    }

    #[test]
    fn preperiodicity_examples() {
        let m = poly_map(&[-1, 0, 1]);
        assert_eq!(preperiodicity_test(&m, &rpt(Q, 0)), Preperiodicity::Preperiodic { tail: 0, period: 2 });
        assert!(preperiodicity_test(&m, &rpt(Q, 2)).is_wandering());
        let f5 = BaseField::Prime(5);
        let sq5 = ReducedMap::polynomial(ResPoly::from_i64s(f5, &[0, 0, 1])).unwrap();
        assert_eq!(preperiodicity_test(&sq5, &rpt(f5, 2)), Preperiodicity::Preperiodic { tail: 2, period: 1 });
    }

    #[test]
    fn degree_one_preperiodicity() {
        let plus1 = poly_map(&[1, 1]);
        assert!(preperiodicity_test(&plus1, &rpt(Q, 0)).is_wandering());
        assert_eq!(preperiodicity_test(&plus1, &P1::Infinity), Preperiodicity::Preperiodic { tail: 0, period: 1 });
        let neg = poly_map(&[0, -1]);
        assert_eq!(preperiodicity_test(&neg, &rpt(Q, 3)), Preperiodicity::Preperiodic { tail: 0, period: 2 });
    }

    #[test]
    fn grand_orbit_examples() {
        let sq = poly_map(&[0, 0, 1]);
        assert_eq!(
            distinct_grand_orbit_certificate(&sq, &pt(2), &pt(4), 10).unwrap(),
            GrandOrbitVerdict::SameOrbit { m: 1, n: 0 }
        );
        assert!(distinct_grand_orbit_certificate(&sq, &pt(2), &pt(3), 10).unwrap().is_certified());
        assert_eq!(
            distinct_grand_orbit_certificate(&poly_map(&[1, 0, 1]), &pt(1), &pt(2), 8).unwrap(),
            GrandOrbitVerdict::SameOrbit { m: 1, n: 0 }
        );
    }

    #[test]
    fn degree_one_grand_orbits() {
        let double = poly_map(&[0, 2]);
        assert_eq!(
            distinct_grand_orbit_certificate(&double, &pt(3), &pt(12), 0).unwrap(),
            GrandOrbitVerdict::SameOrbit { m: 2, n: 0 }
        );
        assert!(distinct_grand_orbit_certificate(&double, &pt(3), &pt(5), 0).unwrap().is_certified());
        let plus1 = poly_map(&[1, 1]);
        assert_eq!(
            distinct_grand_orbit_certificate(&plus1, &pt(5), &pt(2), 0).unwrap(),
            GrandOrbitVerdict::SameOrbit { m: 0, n: 3 }
        );
    }
}
