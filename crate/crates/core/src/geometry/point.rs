use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::sector::normalize_angle;

/// A point (or displacement) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Direction angle of this vector, normalized to `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    /// Angle of the ray from `self` towards `other`.
    pub fn direction_to(self, other: Self) -> f64 {
        (other - self).angle()
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, other: Self, t: f64) -> Self {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Where a segment intersection lies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    /// Single intersection point with parameters along the first and second segment.
    Point { at: Point2, s: f64, t: f64 },
    /// Collinear segments sharing a piece of positive length.
    Overlap,
}

/// Intersects the closed segments `[a0, a1]` and `[b0, b1]`.
///
/// `tol` is an absolute length tolerance used for the parallel test and for
/// touching endpoints.
pub fn segment_intersection(a0: Point2, a1: Point2, b0: Point2, b1: Point2, tol: f64) -> SegmentIntersection {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = r.cross(s);
    let qp = b0 - a0;
    let rl = r.norm();
    let sl = s.norm();
    if rl <= tol || sl <= tol {
        return SegmentIntersection::None;
    }
    if denom.abs() <= 1e-12 * rl * sl {
        // parallel
        if (qp.cross(r) / rl).abs() > tol {
            return SegmentIntersection::None;
        }
        let t0 = qp.dot(r) / (rl * rl);
        let t1 = (b1 - a0).dot(r) / (rl * rl);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        let overlap = (hi - lo) * rl;
        if overlap > tol {
            return SegmentIntersection::Overlap;
        }
        if overlap >= -tol {
            let at = a0 + r * lo.clamp(0.0, 1.0);
            let t = (at - b0).dot(s) / (sl * sl);
            return SegmentIntersection::Point { at, s: lo.clamp(0.0, 1.0), t: t.clamp(0.0, 1.0) };
        }
        return SegmentIntersection::None;
    }
    let t_a = qp.cross(s) / denom;
    let t_b = qp.cross(r) / denom;
    let ea = tol / rl;
    let eb = tol / sl;
    if t_a < -ea || t_a > 1.0 + ea || t_b < -eb || t_b > 1.0 + eb {
        return SegmentIntersection::None;
    }
    let t_a = t_a.clamp(0.0, 1.0);
    let t_b = t_b.clamp(0.0, 1.0);
    SegmentIntersection::Point { at: a0 + r * t_a, s: t_a, t: t_b }
}

/// Distance from `p` to the closed segment `[a, b]`, with the projection parameter.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return (p.distance(a), 0.0);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    (p.distance(a + d * t), t)
}

/// Twice the signed area of a closed polygon (positive for counterclockwise).
pub fn signed_area2(points: &[Point2]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum()
}
