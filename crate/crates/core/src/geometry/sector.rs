//! Open arcs of the unit circle and finite unions of them.
//!
//! A [`SectorSet`] is the angular base ω of the local cone at a boundary
//! point: near the point the domain looks like `(0, r) · ω`.

use std::f64::consts::TAU;
use std::fmt;

use super::GeometryError;

/// Two angles are equal when their circular distance is below this.
pub const ANGLE_TOL: f64 = 1e-9;

/// Maps an angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles measured along the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

pub fn angles_equal(a: f64, b: f64) -> bool {
    circular_distance(a, b) < ANGLE_TOL
}

/// Counterclockwise sweep from `from` to `to`, in `[0, 2π)`.
pub fn ccw_sweep(from: f64, to: f64) -> f64 {
    let d = normalize_angle(to - from);
    if d > TAU - ANGLE_TOL {
        0.0
    } else {
        d
    }
}

/// The open arc `(start, start + length)` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSector {
    start: f64,
    length: f64,
}

impl AngularSector {
    pub fn new(start: f64, length: f64) -> Result<Self, GeometryError> {
        if !start.is_finite() || !length.is_finite() {
            return Err(GeometryError::InvalidSectorSet("non-finite angle".into()));
        }
        if length <= ANGLE_TOL || length > TAU + ANGLE_TOL {
            return Err(GeometryError::InvalidSectorSet(format!(
                "sector length {length} outside (0, 2π]"
            )));
        }
        Ok(Self { start: normalize_angle(start), length: length.min(TAU) })
    }

    /// Sector between two unwrapped angles `start < end`.
    pub fn between(start: f64, end: f64) -> Result<Self, GeometryError> {
        Self::new(start, end - start)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// End angle, normalized to `[0, 2π)`.
    pub fn end(&self) -> f64 {
        normalize_angle(self.start + self.length)
    }

    /// Whether `angle` lies strictly inside the arc (beyond the tolerance).
    pub fn contains(&self, angle: f64) -> bool {
        let d = normalize_angle(angle - self.start);
        d > ANGLE_TOL && d < self.length - ANGLE_TOL
    }

    pub fn is_half_circle(&self) -> bool {
        (self.length - std::f64::consts::PI).abs() < ANGLE_TOL
    }

    pub fn is_punctured_circle(&self) -> bool {
        self.length > TAU - ANGLE_TOL
    }

    pub fn rotated(&self, by: f64) -> Self {
        Self { start: normalize_angle(self.start + by), length: self.length }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        angles_equal(self.start, other.start) && (self.length - other.length).abs() < ANGLE_TOL
    }

    /// Length of the overlap of the two open arcs.
    fn overlap(&self, other: &Self) -> f64 {
        let d = normalize_angle(other.start - self.start);
        let mut best: f64 = 0.0;
        for shift in [-TAU, 0.0, TAU] {
            let b0 = d + shift;
            let b1 = b0 + other.length;
            best = best.max(self.length.min(b1) - b0.max(0.0));
        }
        best
    }
}

impl fmt::Display for AngularSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.9}, {:.9})", self.start, self.start + self.length)
    }
}

/// Shape of the closure of a sector set.
#[derive(Debug, Clone, PartialEq)]
pub enum Closure {
    FullCircle,
    /// Closed arcs `[start, start + length]`, pairwise disjoint.
    Arcs(Vec<(f64, f64)>),
}

/// A finite union of pairwise disjoint open arcs, sorted by start angle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SectorSet {
    sectors: Vec<AngularSector>,
}

impl SectorSet {
    pub fn new(mut sectors: Vec<AngularSector>) -> Result<Self, GeometryError> {
        sectors.sort_by(|a, b| a.start.total_cmp(&b.start));
        for i in 0..sectors.len() {
            for j in i + 1..sectors.len() {
                if sectors[i].overlap(&sectors[j]) > ANGLE_TOL {
                    return Err(GeometryError::InvalidSectorSet(format!(
                        "sectors {} and {} overlap",
                        sectors[i], sectors[j]
                    )));
                }
            }
        }
        let total: f64 = sectors.iter().map(|s| s.length).sum();
        if total > TAU + ANGLE_TOL {
            return Err(GeometryError::InvalidSectorSet("sectors cover more than the circle".into()));
        }
        Ok(Self { sectors })
    }

    /// Builds a set from `(start, end)` pairs of unwrapped angles.
    pub fn from_bounds(bounds: &[(f64, f64)]) -> Result<Self, GeometryError> {
        let sectors = bounds
            .iter()
            .map(|&(a, b)| AngularSector::between(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sectors)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn sectors(&self) -> &[AngularSector] {
        &self.sectors
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.sectors.iter().map(|s| s.length).sum()
    }

    pub fn rotated(&self, by: f64) -> Self {
        let mut sectors: Vec<_> = self.sectors.iter().map(|s| s.rotated(by)).collect();
        sectors.sort_by(|a, b| a.start.total_cmp(&b.start));
        Self { sectors }
    }

    pub fn contains(&self, angle: f64) -> bool {
        self.sectors.iter().any(|s| s.contains(angle))
    }

    /// Equality of the underlying arcs within [`ANGLE_TOL`].
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.sectors.iter().all(|a| other.sectors.iter().any(|b| a.approx_eq(b)))
    }

    /// Distinct endpoints of the arcs (the boundary ∂ω as a subset of S¹).
    pub fn boundary(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = Vec::with_capacity(2 * self.len());
        for s in &self.sectors {
            for a in [s.start, s.end()] {
                if !pts.iter().any(|&p| angles_equal(p, a)) {
                    pts.push(a);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts
    }

    /// Whether the closures of sectors `i` and `j` meet (`i == j` asks
    /// whether a sector touches itself, i.e. is a punctured circle).
    pub fn closures_meet(&self, i: usize, j: usize) -> bool {
        let a = &self.sectors[i];
        if i == j {
            return a.is_punctured_circle();
        }
        let b = &self.sectors[j];
        angles_equal(a.end(), b.start) || angles_equal(b.end(), a.start)
    }

    pub fn closure(&self) -> Closure {
        if self.sectors.is_empty() {
            return Closure::Arcs(Vec::new());
        }
        // chain sectors whose closures touch, in angular order
        let mut arcs: Vec<(f64, f64)> = Vec::new();
        for s in &self.sectors {
            match arcs.last_mut() {
                Some((start, len)) if angles_equal(*start + *len, s.start) => {
                    *len = s.start + s.length - *start;
                }
                _ => arcs.push((s.start, s.length)),
            }
        }
        if arcs.len() > 1 {
            let (ls, ll) = arcs[arcs.len() - 1];
            if angles_equal(ls + ll, arcs[0].0) {
                let (_, fl) = arcs.remove(0);
                let last = arcs.last_mut().expect("non-empty");
                last.1 = ll + fl;
            }
        }
        if arcs.len() == 1 && arcs[0].1 > TAU - ANGLE_TOL {
            return Closure::FullCircle;
        }
        Closure::Arcs(arcs)
    }

    /// Boundary of the closure of the set.
    pub fn closure_boundary(&self) -> Vec<f64> {
        match self.closure() {
            Closure::FullCircle => Vec::new(),
            Closure::Arcs(arcs) => {
                let mut pts: Vec<f64> = Vec::new();
                for (s, l) in arcs {
                    for a in [normalize_angle(s), normalize_angle(s + l)] {
                        if !pts.iter().any(|&p| angles_equal(p, a)) {
                            pts.push(a);
                        }
                    }
                }
                pts.sort_by(f64::total_cmp);
                pts
            }
        }
    }
}

impl fmt::Display for SectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sectors.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.sectors.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn overlapping_sectors_rejected() {
        let err = SectorSet::from_bounds(&[(0.0, PI), (FRAC_PI_2, 3.0 * FRAC_PI_2)]);
        assert!(err.is_err());
        let wrap = SectorSet::from_bounds(&[(3.0 * FRAC_PI_2, 2.0 * PI + FRAC_PI_4), (0.0, FRAC_PI_2)]);
        assert!(wrap.is_err());
    }

    #[test]
    fn touching_sectors_allowed() {
        let s = SectorSet::from_bounds(&[(0.0, PI), (PI, 2.0 * PI)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.closure(), Closure::FullCircle);
        assert!(s.closure_boundary().is_empty());
        assert_eq!(s.boundary().len(), 2);
    }

    #[test]
    fn closure_merges_across_zero() {
        let s = SectorSet::from_bounds(&[(3.0 * FRAC_PI_2, 2.0 * PI), (0.0, FRAC_PI_4)]).unwrap();
        match s.closure() {
            Closure::Arcs(arcs) => {
                assert_eq!(arcs.len(), 1);
                assert!((arcs[0].1 - (FRAC_PI_2 + FRAC_PI_4)).abs() < 1e-12);
            }
            Closure::FullCircle => panic!("not full"),
        }
    }

    #[test]
    fn punctured_circle_closure_is_full() {
        let s = SectorSet::from_bounds(&[(1.0, 1.0 + 2.0 * PI)]).unwrap();
        assert_eq!(s.closure(), Closure::FullCircle);
        assert!(s.closures_meet(0, 0));
    }

    #[test]
    fn normalize() {
        assert!(normalize_angle(-1e-18) < TAU);
        assert!((normalize_angle(-FRAC_PI_2) - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert!(angles_equal(0.0, TAU - 1e-12));
    }
}
