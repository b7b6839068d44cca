use num_rational::Ratio;

use crate::algebra::{AlgebraError, ExtInt};
use crate::error::Result;
use crate::ratmap::KPoly;

pub type Slope = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Index where the segment starts.
    pub start: usize,
    pub length: usize,
    pub slope: Slope,
}

impl Segment {
    /// Valuation of each of the `length` roots on this segment.
    pub fn root_valuation(&self) -> Slope {
        -self.slope
    }
}

/// Lower convex hull of `(i, v(cᵢ))` over the nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Index of the lowest nonzero coefficient: the number of roots at 0.
    pub fn zero_roots(&self) -> usize {
        self.points[0].0
    }

    pub fn degree(&self) -> usize {
        self.points.last().expect("nonempty").0
    }

    /// `(valuation, multiplicity)` for the nonzero roots, increasing valuation
    /// from the right end of the hull to the left.
    pub fn root_valuations(&self) -> Vec<(Slope, usize)> {
        let mut out: Vec<_> = self.segments.iter().map(|s| (s.root_valuation(), s.length)).collect();
        out.sort();
        out
    }

    /// Number of roots `w` (with multiplicity, zero included) with `v(w) > s`,
    /// or `v(w) ≥ s` when `inclusive`.
    pub fn roots_beyond(&self, s: Slope, inclusive: bool) -> usize {
        self.zero_roots()
            + self
                .segments
                .iter()
                .filter(|seg| {
                    let v = seg.root_valuation();
                    v > s || (inclusive && v == s)
                })
                .map(|seg| seg.length)
                .sum::<usize>()
    }

    /// `min_i (v(cᵢ) + i·s)` and whether it is attained at a single index.
    pub fn min_on_sphere(&self, s: Slope) -> (Slope, bool) {
        let vals: Vec<Slope> = self
            .points
            .iter()
            .map(|&(i, v)| Slope::from_integer(v) + s * Slope::from_integer(i as i64))
            .collect();
        let min = *vals.iter().min().expect("nonempty");
        (min, vals.iter().filter(|&&x| x == min).count() == 1)
    }
}

pub fn newton_polygon(p: &KPoly) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial.into());
    }
    let points: Vec<(usize, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.valuation() {
            ExtInt::Finite(v) => Some((i, v)),
            ExtInt::Infinity => None,
        })
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a..pt
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment { start: w[0].0, length: len, slope: Slope::new(w[1].1 - w[0].1, len as i64) }
        })
        .collect();
    Ok(NewtonPolygon { points, segments })
}
