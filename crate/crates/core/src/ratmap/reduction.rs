use std::fmt;

use crate::algebra::{poly_gcd, rational_roots, ResidueScalar, Scalar};
use crate::error::{Error, Result};
use crate::residue::{GaloisClass, ResidueClass};

use super::{KPoly, RatMap, ReducedMap, ResPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Trivial,
    /// Nonconstant reduction of the given degree, below `deg φ`.
    Nontrivial(usize),
    /// Reduction of full degree.
    Good(usize),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Trivial => write!(f, "trivial"),
            Classification::Nontrivial(d) => write!(f, "nontrivial({d})"),
            Classification::Good(d) => write!(f, "good({d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub fbar: ResPoly,
    pub gbar: ResPoly,
    pub hbar: ResPoly,
    /// `None` exactly when the reduction is trivial.
    pub reduced_map: Option<ReducedMap>,
    pub classification: Classification,
    pub bad_classes: Vec<ResidueClass>,
}

impl ReductionReport {
    pub fn reduced(&self) -> Result<&ReducedMap> {
        self.reduced_map.as_ref().ok_or(Error::TrivialReduction)
    }

    pub fn is_bad(&self, class: &ResidueClass) -> bool {
        match class {
            ResidueClass::Galois(g) => self.bad_classes.iter().any(|b| match b {
                ResidueClass::Galois(h) => !poly_gcd(g.poly(), h.poly()).map(|c| c.is_constant()).unwrap_or(true),
                _ => false,
            }),
            _ => self.bad_classes.contains(class),
        }
    }
}

fn residues(p: &KPoly) -> ResPoly {
    let field = p.field();
    ResPoly::new(
        field,
        p.coeffs()
            .iter()
            .map(|c| c.residue().expect("normalized coefficients are integral"))
            .collect(),
    )
}

fn hbar_of(phi: &RatMap) -> (ResPoly, ResPoly, ResPoly) {
    let fbar = residues(phi.f());
    let gbar = residues(phi.g());
    let hbar = poly_gcd(&fbar, &gbar).expect("normal form has a unit coefficient");
    (fbar, gbar, hbar)
}

fn finite_bad(hbar: &ResPoly) -> Vec<ResidueClass> {
    let roots = rational_roots(hbar).expect("hbar nonzero");
    let mut out: Vec<ResidueClass> = roots.roots.into_iter().map(|(r, _)| ResidueClass::Point(r)).collect();
    if !roots.cofactor.is_constant() {
        out.push(ResidueClass::Galois(GaloisClass::from_cofactor(roots.cofactor)));
    }
    out
}

fn infinity_is_bad(phi: &RatMap) -> bool {
    let (_, _, h) = hbar_of(&phi.flip());
    h.eval(&ResidueScalar::zero(phi.field())).is_zero()
}

/// Residues of `f` and `g`, their gcd, the reduced map and its bad classes.
pub fn reduce(phi: &RatMap) -> ReductionReport {
    let (fbar, gbar, hbar) = hbar_of(phi);
    let f0 = fbar.exact_div(&hbar).expect("gcd divides");
    let g0 = gbar.exact_div(&hbar).expect("gcd divides");
    let reduced_map = ReducedMap::new(f0, g0);
    let (classification, bad_classes) = match &reduced_map {
        None => (Classification::Trivial, Vec::new()),
        Some(m) => {
            let mut bad = finite_bad(&hbar);
            if infinity_is_bad(phi) {
                bad.push(ResidueClass::Infinity);
            }
            bad.sort();
            let c = if m.degree() == phi.degree() {
                Classification::Good(m.degree())
            } else {
                Classification::Nontrivial(m.degree())
            };
            (c, bad)
        }
    };
    ReductionReport { fbar, gbar, hbar, reduced_map, classification, bad_classes }
}

/// Residue classes containing both a zero and a pole of `φ`.
pub fn bad_classes(phi: &RatMap) -> Result<Vec<ResidueClass>> {
    let report = reduce(phi);
    if report.classification == Classification::Trivial {
        return Err(Error::TrivialReduction);
    }
    Ok(report.bad_classes)
}
