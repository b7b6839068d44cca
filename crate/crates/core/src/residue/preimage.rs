use crate::algebra::{poly_gcd, radical, rational_roots, ResidueScalar, Scalar};
use crate::error::{Error, Result};
use crate::ratmap::{ReducedMap, ReductionReport, ResPoly};

use super::class::{GaloisClass, ResidueClass};
use super::image::classes_of_roots;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageEntry {
    pub class: ResidueClass,
    /// Points of `P¹(k̄)` in the class.
    pub points: usize,
    /// Sum of the local degrees over those points.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPreimages {
    pub entries: Vec<PreimageEntry>,
}

impl ClassPreimages {
    /// Distinct points of `φ̄⁻¹(a)` over `k̄`.
    pub fn count(&self) -> usize {
        self.entries.iter().map(|e| e.points).sum()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn classes(&self) -> Vec<ResidueClass> {
        self.entries.iter().map(|e| e.class.clone()).collect()
    }
}

fn check_field(map: &ReducedMap, class: &ResidueClass) -> Result<()> {
    let field = match class {
        ResidueClass::Point(a) => a.field(),
        ResidueClass::Infinity => return Ok(()),
        ResidueClass::Galois(g) => g.poly().field(),
    };
    if field != map.field() {
        return Err(Error::InvalidClass("class over a different field".into()));
    }
    Ok(())
}

/// `φ̄⁻¹(a)` split into rational points, infinity and one bundle for the rest.
pub fn class_preimages(report: &ReductionReport, class: &ResidueClass) -> Result<ClassPreimages> {
    let map = report.reduced()?;
    check_field(map, class)?;
    let d = map.degree();
    let (pulled, form_degree) = match class {
        ResidueClass::Point(a) => (map.num() - &map.den().scale(a), d),
        ResidueClass::Infinity => (map.den().clone(), d),
        ResidueClass::Galois(g) => (map.substitute(g.poly(), g.point_count()), d * g.point_count()),
    };
    let mut entries = Vec::new();
    let rr = rational_roots(&pulled)?;
    let mut rest = pulled.deg();
    for (r, m) in rr.roots {
        rest -= m;
        entries.push(PreimageEntry { class: ResidueClass::Point(r), points: 1, multiplicity: m });
    }
    if pulled.deg() < form_degree {
        entries.push(PreimageEntry { class: ResidueClass::Infinity, points: 1, multiplicity: form_degree - pulled.deg() });
    }
    if !rr.cofactor.is_constant() {
        let points = rr.cofactor.deg();
        entries.push(PreimageEntry {
            class: ResidueClass::Galois(GaloisClass::from_cofactor(rr.cofactor)),
            points,
            multiplicity: rest,
        });
    }
    Ok(ClassPreimages { entries })
}

/// A finite subset of `P¹(k̄)` closed under Galois conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    /// Squarefree monic polynomial vanishing on the finite points.
    finite: ResPoly,
    infinity: bool,
}

impl PointSet {
    pub fn empty(field: crate::algebra::BaseField) -> Self {
        PointSet { finite: ResPoly::one(field), infinity: false }
    }

    pub fn from_classes(field: crate::algebra::BaseField, classes: &[ResidueClass]) -> Result<Self> {
        let mut finite = ResPoly::one(field);
        let mut infinity = false;
        for c in classes {
            match c {
                ResidueClass::Point(a) => {
                    finite = &finite * &ResPoly::new(field, vec![a.neg(), ResidueScalar::one(field)]);
                }
                ResidueClass::Infinity => infinity = true,
                ResidueClass::Galois(g) => finite = &finite * g.poly(),
            }
        }
        Ok(PointSet { finite: radical(&finite)?, infinity })
    }

    pub fn finite(&self) -> &ResPoly {
        &self.finite
    }

    pub fn has_infinity(&self) -> bool {
        self.infinity
    }

    pub fn count(&self) -> usize {
        self.finite.deg() + self.infinity as usize
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        let g = poly_gcd(&self.finite, &other.finite)?;
        let finite = (&self.finite * &other.finite.exact_div(&g)?).monic();
        Ok(PointSet { finite, infinity: self.infinity || other.infinity })
    }

    pub fn preimage(&self, map: &ReducedMap) -> Result<PointSet> {
        let e = self.finite.deg();
        let mut pulled = map.substitute(&self.finite, e);
        if self.infinity {
            pulled = &pulled * map.den();
        }
        let form_degree = map.degree() * (e + self.infinity as usize);
        Ok(PointSet { infinity: pulled.deg() < form_degree, finite: radical(&pulled)? })
    }

    /// Rational points, infinity, then the remaining bundle.
    pub fn classes(&self) -> Result<Vec<ResidueClass>> {
        let mut out = classes_of_roots(&self.finite)?;
        if self.infinity {
            out.push(ResidueClass::Infinity);
        }
        out.sort();
        Ok(out)
    }
}

/// `φ̄ = ψ ∘ Frob^r` with `ψ` separable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separability {
    pub frobenius_power: u32,
    pub psi: ReducedMap,
    pub separable: bool,
}

fn in_pth_powers(p: &ResPoly, q: usize) -> bool {
    p.coeffs().iter().enumerate().all(|(i, c)| i % q == 0 || c.is_zero())
}

fn deflate(p: &ResPoly, q: usize) -> ResPoly {
    ResPoly::new(p.field(), p.coeffs().iter().step_by(q).cloned().collect())
}

pub fn separability_decompose(map: &ReducedMap) -> Result<Separability> {
    let q = map.field().characteristic() as usize;
    let mut psi = map.clone();
    let mut r = 0;
    if q > 0 {
        while in_pth_powers(psi.num(), q) && in_pth_powers(psi.den(), q) {
            psi = ReducedMap::new(deflate(psi.num(), q), deflate(psi.den(), q))
                .ok_or_else(|| Error::InvalidArgument("map collapsed under deflation".into()))?;
            r += 1;
        }
    }
    let wronskian = &(&psi.num().derivative() * psi.den()) - &(psi.num() * &psi.den().derivative());
    Ok(Separability { frobenius_power: r, separable: !wronskian.is_zero(), psi })
}
