//! Heights on `P¹(Q)`, explicit height-gap constants, and certificates that
//! points wander and lie in distinct grand orbits.
//!
//! Every certificate compares multiplicative heights with exact integer
//! powers. Logarithms only appear in reported intervals, where they are
//! bracketed by rationals with outward rounding.

mod canonical;
mod degree_one;
mod gap;
mod logs;
mod point;
mod search;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::P1;
use crate::ratmap::ResPoly;

pub(crate) use canonical::orbit_avoids;
pub(crate) use point::q_to_residue;
pub use canonical::{
    canonical_height_interval, distinct_grand_orbit_certificate, preperiodicity_test, CanonicalHeightInterval,
    DistinctEvidence, GrandOrbitVerdict, Preperiodicity, TailProof, WanderingProof,
};
pub use degree_one::{
    degree_one_family, degree_one_form, scaling_family_distinct, translation_family, DegreeOneForm, RationalMobius,
    COLLISION_DEPTH,
};
pub use gap::{height_gap_constants, HeightGapConstants};
pub use logs::{ln_bounds, LOG_PRECISION};
pub use search::{
    points_by_height, wandering_representatives, PairCertificate, Representatives, MAX_SEARCH_HEIGHT,
    REPRESENTATIVE_DEPTH,
};

/// A multiplicative height `H ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightValue {
    pub multiplicative: BigInt,
}

impl HeightValue {
    /// Rational bounds on `log H`.
    pub fn log_bounds(&self) -> (BigRational, BigRational) {
        ln_bounds(&self.multiplicative)
    }

    pub fn log_approx(&self) -> f64 {
        log_approx(&self.multiplicative)
    }
}

/// `ln` of a positive integer in floating point, for display only.
pub fn log_approx(h: &BigInt) -> f64 {
    let bits = h.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(h).unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = h >> shift;
    num_traits::ToPrimitive::to_f64(&top).expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `max(|m|, |n|)` for `x = m/n` in lowest terms; `H(∞) = 1`.
pub fn standard_height(x: &P1<BigRational>) -> HeightValue {
    HeightValue { multiplicative: point::ProjPoint::from_q(x).height() }
}

/// `max(deg num, deg den)` for a coprime pair over the constant field.
pub fn function_field_height(num: &ResPoly, den: &ResPoly) -> usize {
    num.deg().max(den.deg())
}
