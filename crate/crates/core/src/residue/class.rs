use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{radical, rational_roots, Poly, ResidueScalar, ValuedScalar, P1};
use crate::error::{Error, Result};
use crate::expr::format_residue_poly;

/// Squarefree monic polynomial over `k` with no root in `k`; stands for
/// the set of its roots in `k̄` without factoring it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisClass {
    poly: Poly<ResidueScalar>,
}

impl GaloisClass {
    pub fn new(poly: Poly<ResidueScalar>) -> Result<Self> {
        if poly.is_zero() || poly.is_constant() {
            return Err(Error::InvalidClass("polynomial must be nonconstant".into()));
        }
        let poly = poly.monic();
        if radical(&poly)? != poly {
            return Err(Error::InvalidClass("polynomial is not squarefree".into()));
        }
        if !rational_roots(&poly)?.roots.is_empty() {
            return Err(Error::InvalidClass("polynomial has a root in the residue field".into()));
        }
        Ok(GaloisClass { poly })
    }

    /// For cofactors already known to be squarefree, monic and root-free.
    pub(crate) fn from_cofactor(poly: Poly<ResidueScalar>) -> Self {
        debug_assert!(poly.deg() >= 2);
        GaloisClass { poly }
    }

    pub fn poly(&self) -> &Poly<ResidueScalar> {
        &self.poly
    }

    pub fn point_count(&self) -> usize {
        self.poly.deg()
    }
}

/// A point of `P¹(k)` or a bundle of conjugate points of `P¹(k̄)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    Point(ResidueScalar),
    Infinity,
    Galois(GaloisClass),
}

impl ResidueClass {
    pub fn point_count(&self) -> usize {
        match self {
            ResidueClass::Galois(g) => g.point_count(),
            _ => 1,
        }
    }

    pub fn as_p1(&self) -> Option<P1<ResidueScalar>> {
        match self {
            ResidueClass::Point(a) => Some(P1::Finite(a.clone())),
            ResidueClass::Infinity => Some(P1::Infinity),
            ResidueClass::Galois(_) => None,
        }
    }

    pub fn from_p1(x: P1<ResidueScalar>) -> Self {
        match x {
            P1::Finite(a) => ResidueClass::Point(a),
            P1::Infinity => ResidueClass::Infinity,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ResidueClass::Point(_) => 0,
            ResidueClass::Infinity => 1,
            ResidueClass::Galois(_) => 2,
        }
    }
}

impl PartialOrd for ResidueClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResidueClass {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ResidueClass::Point(a), ResidueClass::Point(b)) => a.cmp(b),
            (ResidueClass::Galois(a), ResidueClass::Galois(b)) => {
                let (pa, pb) = (a.poly.coeffs(), b.poly.coeffs());
                pa.len().cmp(&pb.len()).then_with(|| pa.iter().rev().cmp(pb.iter().rev()))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueClass::Point(a) => write!(f, "{a}"),
            ResidueClass::Infinity => write!(f, "inf"),
            ResidueClass::Galois(g) => write!(f, "[{}]", format_residue_poly(g.poly(), 'z')),
        }
    }
}

/// Residue class of a point of `P¹(K)`.
pub fn class_of(x: &P1<ValuedScalar>) -> ResidueClass {
    match x {
        P1::Infinity => ResidueClass::Infinity,
        P1::Finite(v) => match v.residue() {
            Ok(r) => ResidueClass::Point(r),
            Err(_) => ResidueClass::Infinity,
        },
    }
}
