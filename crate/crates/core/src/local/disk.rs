use std::fmt;

use crate::algebra::{ExtInt, Scalar, ValuedScalar};
use crate::error::{Error, Result};
use crate::ratmap::{KPoly, RatMap};

use super::newton::{newton_polygon, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiskKind {
    /// `{x : v(x − a) > s}`
    Open,
    /// `{x : v(x − a) ≥ s}`
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub center: ValuedScalar,
    pub radius_valuation: Slope,
    pub kind: DiskKind,
}

impl Disk {
    pub fn open(center: ValuedScalar, s: Slope) -> Self {
        Disk { center, radius_valuation: s, kind: DiskKind::Open }
    }

    pub fn closed(center: ValuedScalar, s: Slope) -> Self {
        Disk { center, radius_valuation: s, kind: DiskKind::Closed }
    }

    pub fn contains(&self, x: &ValuedScalar) -> bool {
        match x.sub(&self.center).valuation() {
            ExtInt::Infinity => true,
            ExtInt::Finite(v) => {
                let v = Slope::from_integer(v);
                match self.kind {
                    DiskKind::Open => v > self.radius_valuation,
                    DiskKind::Closed => v >= self.radius_valuation,
                }
            }
        }
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            DiskKind::Open => "D",
            DiskKind::Closed => "Dbar",
        };
        write!(f, "{name}({}, v>{}{})", self.center, if self.kind == DiskKind::Closed { "=" } else { "" }, self.radius_valuation)
    }
}

/// `φ(a + w) = Σ cᵢ wⁱ` truncated at `order`, with the shifted forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub center: ValuedScalar,
    pub coeffs: Vec<ValuedScalar>,
    /// `f(a + w)` and `g(a + w)`.
    pub numerator: KPoly,
    pub denominator: KPoly,
    /// Largest valuation of a pole of `φ(a + w)`; `None` without finite poles.
    pub pole_valuation: Option<Slope>,
}

fn val(x: &ValuedScalar) -> Option<Slope> {
    x.valuation().finite().map(Slope::from_integer)
}

fn shifted(phi: &RatMap, a: &ValuedScalar) -> Result<(KPoly, KPoly)> {
    let big_f = phi.f().taylor_shift(a);
    let big_g = phi.g().taylor_shift(a);
    if big_g.coeff(0).is_zero() {
        return Err(Error::PoleAtCenter);
    }
    Ok((big_f, big_g))
}

fn pole_valuation(big_g: &KPoly) -> Result<Option<Slope>> {
    if big_g.is_constant() {
        return Ok(None);
    }
    let np = newton_polygon(big_g)?;
    Ok(np.root_valuations().last().map(|&(v, _)| v))
}

fn series(big_f: &KPoly, big_g: &KPoly, order: usize) -> Vec<ValuedScalar> {
    let g0_inv = big_g.coeff(0).inv().expect("nonzero constant term");
    let mut c: Vec<ValuedScalar> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = big_f.coeff(i);
        for j in 1..=i.min(big_g.deg()) {
            let gj = big_g.coeff(j);
            if !gj.is_zero() {
                acc = acc.sub(&gj.mul(&c[i - j]));
            }
        }
        c.push(acc.mul(&g0_inv));
    }
    c
}

pub fn taylor_expand(phi: &RatMap, a: &ValuedScalar, order: usize) -> Result<LocalExpansion> {
    let (big_f, big_g) = shifted(phi, a)?;
    let pole_valuation = pole_valuation(&big_g)?;
    Ok(LocalExpansion {
        center: a.clone(),
        coeffs: series(&big_f, &big_g, order),
        numerator: big_f,
        denominator: big_g,
        pole_valuation,
    })
}

fn pole_free(t: Option<Slope>, disk: &Disk) -> bool {
    match t {
        None => true,
        Some(t) => match disk.kind {
            DiskKind::Open => t <= disk.radius_valuation,
            DiskKind::Closed => t < disk.radius_valuation,
        },
    }
}

/// `φ(U)` for a pole-free disk: centered at `φ(a)`, same kind, radius from
/// the dominant term of `φ(a + w) − φ(a)`.
pub fn disk_image(phi: &RatMap, disk: &Disk) -> Result<Disk> {
    let (big_f, big_g) = shifted(phi, &disk.center)?;
    if !pole_free(pole_valuation(&big_g)?, disk) {
        return Err(Error::PoleInDisk);
    }
    let (f0, g0) = (big_f.coeff(0), big_g.coeff(0));
    let diff = &big_f.scale(&g0) - &big_g.scale(&f0);
    let (min, _) = newton_polygon(&diff)?.min_on_sphere(disk.radius_valuation);
    let v_g0 = val(&g0).expect("nonzero");
    Ok(Disk {
        center: f0.div(&g0).expect("nonzero"),
        radius_valuation: min - v_g0 * 2,
        kind: disk.kind,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Injectivity {
    /// `v(φ(x) − φ(y)) = scaling_valuation + v(x − y)` on the disk.
    Injective { scaling_valuation: i64, critical_points: Option<usize> },
    /// Term `witness` dominates the linear one somewhere in the disk.
    NotInjective { witness: usize, critical_points: Option<usize> },
}

/// Zeros of `φ′` in the disk, counted through the derivative numerator.
/// Only meaningful in residue characteristic 0.
fn critical_points(big_f: &KPoly, big_g: &KPoly, disk: &Disk) -> Result<Option<usize>> {
    if big_f.field().characteristic() != 0 {
        return Ok(None);
    }
    let d = &(&big_f.derivative() * big_g) - &(big_f * &big_g.derivative());
    if d.is_zero() {
        return Ok(None);
    }
    let np = newton_polygon(&d)?;
    Ok(Some(np.roots_beyond(disk.radius_valuation, disk.kind == DiskKind::Closed)))
}

/// Dominance of the linear term: `v(c₁) + s ≤ v(cᵢ) + i·s` for all `i ≥ 2`
/// (strict on closed disks).
///
/// `φ(a + w) − φ(a) = D(w) / (g₀·G(w))` with `D = g₀·F − f₀·G`, and `1/G` has
/// dominant index 0 on a pole-free disk, so the indices attaining the
/// minimum are read off the polynomial `D`.
pub fn injectivity_isometry(phi: &RatMap, disk: &Disk) -> Result<Injectivity> {
    let (big_f, big_g) = shifted(phi, &disk.center)?;
    if !pole_free(pole_valuation(&big_g)?, disk) {
        return Err(Error::PoleInDisk);
    }
    let s = disk.radius_valuation;
    let crit = critical_points(&big_f, &big_g, disk)?;
    let (f0, g0) = (big_f.coeff(0), big_g.coeff(0));
    let diff = &big_f.scale(&g0) - &big_g.scale(&f0);
    let weighted: Vec<(Slope, usize)> = diff
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, c)| val(c).map(|v| (v + s * Slope::from_integer(i as i64), i)))
        .collect();
    let min = weighted.iter().map(|w| w.0).min().expect("nonconstant map");
    let mut at_min = weighted.iter().filter(|w| w.0 == min).map(|w| w.1);
    let first = at_min.next().expect("attained");
    let tie = at_min.next();
    match (first, tie) {
        (1, None) => {}
        (1, Some(_)) if disk.kind == DiskKind::Open => {}
        (1, Some(i)) | (i, _) => return Ok(Injectivity::NotInjective { witness: i, critical_points: crit }),
    }
    let v1 = diff.coeff(1).valuation().finite().expect("nonzero") - 2 * g0.valuation().finite().expect("nonzero");
    Ok(Injectivity::Injective { scaling_valuation: v1, critical_points: crit })
}
