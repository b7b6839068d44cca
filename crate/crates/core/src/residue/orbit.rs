use crate::error::{Error, Result};
use crate::heights::{orbit_avoids, TailProof};
use crate::ratmap::{reduce, RatMap, ReductionReport};

use super::class::ResidueClass;
use super::image::{class_image, ClassImage};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    GoodStep,
    BadClassHit,
    /// Same class as step `m`.
    Collision(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    pub step: usize,
    pub class: ResidueClass,
    pub status: StepStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// `D` good classes, pairwise distinct.
    AllGoodDistinct(usize),
    HitBad(usize),
    /// Step `m + n` repeats step `m`.
    Cyclic(usize, usize),
    /// The bundle at this step maps into several classes.
    Branched(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassOrbitReport {
    pub entries: Vec<OrbitEntry>,
    pub verdict: OrbitVerdict,
}

/// The first `depth` classes `b̄, φ̄(b̄), …` until a bad class or a repeat.
pub fn class_orbit(phi: &RatMap, start: &ResidueClass, depth: usize) -> Result<ClassOrbitReport> {
    class_orbit_in(&reduce(phi), start, depth)
}

pub fn class_orbit_in(report: &ReductionReport, start: &ResidueClass, depth: usize) -> Result<ClassOrbitReport> {
    report.reduced()?;
    let mut entries: Vec<OrbitEntry> = Vec::new();
    let mut cur = start.clone();
    for step in 0..depth {
        if let Some(m) = entries.iter().position(|e| e.class == cur) {
            entries.push(OrbitEntry { step, class: cur, status: StepStatus::Collision(m) });
            return Ok(ClassOrbitReport { entries, verdict: OrbitVerdict::Cyclic(m, step - m) });
        }
        if report.is_bad(&cur) {
            entries.push(OrbitEntry { step, class: cur, status: StepStatus::BadClassHit });
            return Ok(ClassOrbitReport { entries, verdict: OrbitVerdict::HitBad(step) });
        }
        entries.push(OrbitEntry { step, class: cur.clone(), status: StepStatus::GoodStep });
        if step + 1 == depth {
            break;
        }
        cur = match class_image(report, &cur)? {
            ClassImage::Class(c) => c,
            ClassImage::Classes(_) => return Ok(ClassOrbitReport { entries, verdict: OrbitVerdict::Branched(step) }),
            ClassImage::WholeSphere => unreachable!("good classes have a single image"),
        };
    }
    Ok(ClassOrbitReport { entries, verdict: OrbitVerdict::AllGoodDistinct(depth) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedClass {
    pub class: ResidueClass,
    /// Steps taken from the starting class.
    pub steps: usize,
    pub last_bad_hit: Option<usize>,
    pub tail: TailProof,
}

/// Moves a rational class past its last visit to a bad class and proves
/// that the rest of its orbit stays good.
pub fn push_past_bad(report: &ReductionReport, start: &ResidueClass, horizon: usize) -> Result<PushedClass> {
    let map = report.reduced()?;
    let x = start
        .as_p1()
        .ok_or_else(|| Error::InvalidArgument("push_past_bad needs a rational class".into()))?;
    let bad: Vec<_> = report.bad_classes.iter().filter_map(|c| c.as_p1()).collect();
    let mut cur = x;
    let mut steps = 0;
    let mut last = None;
    loop {
        match orbit_avoids(map, &cur, &bad)? {
            Ok(tail) => {
                return Ok(PushedClass { class: ResidueClass::from_p1(cur), steps, last_bad_hit: last, tail });
            }
            Err(k) => {
                let hit = steps + k;
                if hit >= horizon {
                    return Err(Error::HorizonTooSmall(horizon));
                }
                for _ in 0..=k {
                    cur = map.eval(&cur);
                }
                last = Some(hit);
                steps = hit + 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BaseField, Poly, ResidueScalar, Scalar, ValuedScalar};
    use crate::ratmap::KPoly;

    const Q: BaseField = BaseField::Rational;

    fn t(c: &[i64]) -> ValuedScalar {
        ValuedScalar::from_poly(Poly::from_i64s(Q, c))
    }

    fn kp(cs: &[&[i64]]) -> KPoly {
        KPoly::new(Q, cs.iter().map(|c| t(c)).collect())
    }

    fn pt(n: i64) -> ResidueClass {
        ResidueClass::Point(ResidueScalar::from_i64(Q, n))
    }

    fn classes(r: &ClassOrbitReport) -> Vec<ResidueClass> {
        r.entries.iter().map(|e| e.class.clone()).collect()
    }

    // (z² + z + T)/z
    fn translation() -> RatMap {
        RatMap::new(kp(&[&[0, 1], &[1], &[1]]), kp(&[&[], &[1]])).unwrap()
    }

    #[test]
    fn squaring_orbit() {
        let sq = RatMap::polynomial(kp(&[&[], &[], &[1]])).unwrap();
        let r = class_orbit(&sq, &pt(2), 5).unwrap();
        assert_eq!(classes(&r), vec![pt(2), pt(4), pt(16), pt(256), pt(65536)]);
        assert_eq!(r.verdict, OrbitVerdict::AllGoodDistinct(5));
    }

    #[test]
    fn translation_hits_bad() {
        let r = class_orbit(&translation(), &pt(-3), 10).unwrap();
        assert_eq!(classes(&r), vec![pt(-3), pt(-2), pt(-1), pt(0)]);
        assert_eq!(r.verdict, OrbitVerdict::HitBad(3));
        assert_eq!(r.entries[3].status, StepStatus::BadClassHit);
    }

    #[test]
    fn negation_cycles() {
        // -z + T/z
        let phi = RatMap::new(kp(&[&[0, 1], &[], &[-1]]), kp(&[&[], &[1]])).unwrap();
        let r = class_orbit(&phi, &pt(1), 10).unwrap();
        assert_eq!(classes(&r), vec![pt(1), pt(-1), pt(1)]);
        assert_eq!(r.verdict, OrbitVerdict::Cyclic(0, 2));
    }

    #[test]
    fn pushing() {
        let report = reduce(&translation());
        let p = push_past_bad(&report, &pt(-3), 10).unwrap();
        assert_eq!((p.class, p.steps, p.last_bad_hit), (pt(1), 4, Some(3)));
        assert_eq!(p.tail, TailProof::ClosedForm);
        let half = ResidueClass::Point(ResidueScalar::Rational(num_rational::BigRational::new(1.into(), 2.into())));
        assert_eq!(push_past_bad(&report, &half, 10).unwrap().class, half);
        assert_eq!(push_past_bad(&report, &pt(-3), 3), Err(Error::HorizonTooSmall(3)));
        assert_eq!(push_past_bad(&report, &pt(-30), 10), Err(Error::HorizonTooSmall(10)));
    }

    #[test]
    fn pushing_with_heights() {
        // z² + T/(z + 1) is bad at -1 only
        let phi = RatMap::new(kp(&[&[0, 1], &[], &[1], &[1]]), kp(&[&[1], &[1]])).unwrap();
        let report = reduce(&phi);
        let p = push_past_bad(&report, &pt(2), 10).unwrap();
        assert_eq!((p.class, p.steps), (pt(2), 0));
        assert!(matches!(p.tail, TailProof::HeightEscape { .. }));
        let p = push_past_bad(&report, &pt(-1), 10).unwrap();
        assert_eq!((p.class, p.last_bad_hit), (pt(1), Some(0)));
        assert!(matches!(p.tail, TailProof::FiniteOrbit { .. }));
    }
}
