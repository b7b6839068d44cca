use std::fmt;

use num_rational::BigRational;

use crate::algebra::{BaseField, P1};
use crate::error::{Error, Result};
use crate::heights::{
    preperiodicity_test, wandering_representatives, GrandOrbitVerdict, Preperiodicity, WanderingProof,
};
use crate::local::{repelling_fixed_class, RepellingVerdict, Slope};
use crate::ratmap::{reduce, Classification, RatMap};

use super::class::ResidueClass;
use super::julia::{julia_class_growth, JuliaConclusion};
use super::orbit::{class_orbit_in, push_past_bad, ClassOrbitReport, OrbitVerdict, PushedClass};

/// Orbit length scanned for the last visit to a bad class.
pub const PUSH_HORIZON: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentType {
    Dynamical,
    DynamicalD,
    D,
    Analytic,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentType::Dynamical => "dynamical",
            ComponentType::DynamicalD => "dynamicalD",
            ComponentType::D => "D",
            ComponentType::Analytic => "analytic",
        })
    }
}

/// Evidence that the Julia set meets infinitely many residue classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JuliaWitness {
    /// Preimage counts of a seed set grow under a separable reduction.
    RiemannHurwitz { seeds: Vec<ResidueClass>, counts: Vec<usize> },
    /// A repelling fixed point in a class whose backward orbit under `φ̄` is
    /// infinite.
    RepellingBackwardOrbit { class: ResidueClass, offset: Option<Slope>, derivative_valuation: Slope },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WanderingCertificate {
    /// Wandering point of `φ̄` the class was pushed from.
    pub representative: P1<BigRational>,
    pub pushed: PushedClass,
    pub orbit: ClassOrbitReport,
    pub wandering: WanderingProof,
    /// Grand-orbit verdicts against each earlier certificate.
    pub distinct_from: Vec<(usize, GrandOrbitVerdict)>,
    pub component_types: Vec<ComponentType>,
    /// The witness, or why none was found.
    pub julia: std::result::Result<JuliaWitness, String>,
}

impl WanderingCertificate {
    pub fn base_class(&self) -> &ResidueClass {
        &self.pushed.class
    }
}

fn julia_witness(phi: &RatMap, bad: &[ResidueClass]) -> Result<std::result::Result<JuliaWitness, String>> {
    let report = reduce(phi);
    let map = report.reduced()?;
    if map.degree() >= 2 {
        let growth = julia_class_growth(phi, 2)?;
        return Ok(match growth.conclusion {
            JuliaConclusion::InfinitelyManyCertified => {
                Ok(JuliaWitness::RiemannHurwitz { seeds: growth.seeds, counts: growth.counts })
            }
            JuliaConclusion::HypothesesNotMet(why) => Err(why),
        });
    }
    for c in bad {
        let Some(x) = c.as_p1() else { continue };
        let verdict = match repelling_fixed_class(phi, c) {
            Ok(v) => v,
            Err(Error::BadLift) => continue,
            Err(e) => return Err(e),
        };
        if let RepellingVerdict::Witness { offset, derivative_valuation } = verdict {
            if preperiodicity_test(map, &x).is_wandering() {
                return Ok(Ok(JuliaWitness::RepellingBackwardOrbit {
                    class: c.clone(),
                    offset,
                    derivative_valuation,
                }));
            }
        }
    }
    Ok(Err("no repelling fixed point in a wandering bad class".into()))
}

/// `n` residue classes with pairwise distinct infinite grand orbits, each
/// followed `depth` steps through good classes.
pub fn wandering_domain_certificates(phi: &RatMap, n: usize, depth: usize) -> Result<Vec<WanderingCertificate>> {
    let report = reduce(phi);
    if report.classification == Classification::Trivial {
        return Err(Error::HypothesesNotMet("reduction is trivial".into()));
    }
    if phi.field() != BaseField::Rational {
        return Err(Error::HypothesesNotMet("every class is preperiodic over a finite residue field".into()));
    }
    let map = report.reduced()?;
    let reps = wandering_representatives(map, n)?;
    let julia = julia_witness(phi, &report.bad_classes)?;
    let mut types = vec![ComponentType::Dynamical, ComponentType::DynamicalD];
    if julia.is_ok() {
        types.extend([ComponentType::D, ComponentType::Analytic]);
    }
    let mut out = Vec::with_capacity(reps.points.len());
    for (i, rep) in reps.points.iter().enumerate() {
        let start = ResidueClass::from_p1(crate::heights::q_to_residue(rep));
        let pushed = push_past_bad(&report, &start, PUSH_HORIZON)?;
        let orbit = class_orbit_in(&report, &pushed.class, depth)?;
        if orbit.verdict != OrbitVerdict::AllGoodDistinct(depth) {
            return Err(Error::HypothesesNotMet(format!("orbit of {} is not good and distinct", pushed.class)));
        }
        let x = pushed.class.as_p1().expect("pushed classes are rational");
        let wandering = match preperiodicity_test(map, &x) {
            Preperiodicity::Wandering(proof) => proof,
            other => return Err(Error::HypothesesNotMet(format!("{} is not certified wandering: {other:?}", pushed.class))),
        };
        let distinct_from = reps.pairs.iter().filter(|p| p.j == i).map(|p| (p.i, p.verdict.clone())).collect();
        out.push(WanderingCertificate {
            representative: rep.clone(),
            pushed,
            orbit,
            wandering,
            distinct_from,
            component_types: types.clone(),
            julia: julia.clone(),
        });
    }
    Ok(out)
}
