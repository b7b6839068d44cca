use crate::error::{Error, Result};
use crate::local::{repelling_fixed_class, RepellingVerdict};
use crate::ratmap::{reduce, RatMap};

use super::class::ResidueClass;
use super::preimage::{separability_decompose, PointSet, Separability};

const SEED_ROUNDS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JuliaConclusion {
    InfinitelyManyCertified,
    HypothesesNotMet(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuliaGrowthReport {
    /// Bad rational classes holding a repelling fixed point.
    pub witnesses: Vec<(ResidueClass, RepellingVerdict)>,
    pub seeds: Vec<ResidueClass>,
    /// `counts[j] = |φ̄⁻ʲ(S)|` for `j = 0..=depth`.
    pub counts: Vec<usize>,
    pub separability: Separability,
    pub conclusion: JuliaConclusion,
}

/// Grows a set of residue classes known to meet the Julia set by pulling
/// it back under `φ̄`.
pub fn julia_class_growth(phi: &RatMap, depth: usize) -> Result<JuliaGrowthReport> {
    let report = reduce(phi);
    let map = report.reduced()?;
    let field = map.field();
    let separability = separability_decompose(map)?;
    let mut witnesses = Vec::new();
    for c in report.bad_classes.iter().filter(|c| c.as_p1().is_some()) {
        match repelling_fixed_class(phi, c) {
            Ok(w @ RepellingVerdict::Witness { .. }) => witnesses.push((c.clone(), w)),
            Ok(RepellingVerdict::NoneFound) | Err(Error::BadLift) => {}
            Err(e) => return Err(e),
        }
    }
    let seed_classes: Vec<_> = witnesses.iter().map(|(c, _)| c.clone()).collect();
    let mut seeds = PointSet::from_classes(field, &seed_classes)?;
    if seeds.count() > 0 {
        for _ in 0..SEED_ROUNDS {
            if seeds.count() >= 3 {
                break;
            }
            seeds = seeds.union(&seeds.preimage(map)?)?;
        }
    }
    let mut counts = vec![seeds.count()];
    let mut level = seeds.clone();
    for _ in 0..depth.max(1) {
        level = level.preimage(map)?;
        counts.push(level.count());
    }
    let conclusion = if witnesses.is_empty() {
        JuliaConclusion::HypothesesNotMet("no bad class holds a repelling fixed point".into())
    } else if seeds.count() < 3 {
        JuliaConclusion::HypothesesNotMet(format!("only {} seed points", seeds.count()))
    } else if !separability.separable || separability.psi.degree() < 2 {
        JuliaConclusion::HypothesesNotMet("separable part of the reduction has degree below 2".into())
    } else if counts[1] <= counts[0] {
        JuliaConclusion::HypothesesNotMet("preimage count did not grow".into())
    } else {
        JuliaConclusion::InfinitelyManyCertified
    };
    Ok(JuliaGrowthReport { witnesses, seeds: seeds.classes()?, counts, separability, conclusion })
}
