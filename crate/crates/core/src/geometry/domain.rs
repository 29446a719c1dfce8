use super::point::{point_segment_distance, signed_area2, Point2};

/// Planar domain bounded by a simple outer contour, optional holes, and
/// crack polylines drawn inside it.
///
/// The outer contour runs counterclockwise and holes run clockwise, so the
/// domain always lies to the left of every directed boundary edge. When
/// `smooth_outer` is set, the outer contour is a sampled smooth curve: its
/// listed vertices are sample points, not corners.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalDomain {
    pub outer_boundary: Vec<Point2>,
    pub smooth_outer: bool,
    pub holes: Vec<Vec<Point2>>,
    pub cracks: Vec<Vec<Point2>>,
}

/// One directed edge of a closed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourEdge {
    pub from: Point2,
    pub to: Point2,
    /// 0 for the outer contour, `h + 1` for hole `h`.
    pub contour: usize,
    pub index: usize,
}

impl PolygonalDomain {
    pub fn polygon(outer: Vec<Point2>) -> Self {
        Self { outer_boundary: outer, smooth_outer: false, holes: Vec::new(), cracks: Vec::new() }
    }

    /// Outer boundary given as samples of a smooth closed curve.
    pub fn smooth_curve(samples: Vec<Point2>) -> Self {
        Self { outer_boundary: samples, smooth_outer: true, holes: Vec::new(), cracks: Vec::new() }
    }

    pub fn with_hole(mut self, hole: Vec<Point2>) -> Self {
        self.holes.push(hole);
        self
    }

    pub fn with_crack(mut self, crack: Vec<Point2>) -> Self {
        self.cracks.push(crack);
        self
    }

    /// Unit square `[0, 1]²`.
    pub fn unit_square() -> Self {
        Self::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
    }

    /// Counterclockwise samples of the unit circle, starting at `(1, 0)`.
    pub fn unit_disk(samples: usize) -> Self {
        let pts = (0..samples)
            .map(|i| Point2::from_polar(1.0, std::f64::consts::TAU * i as f64 / samples as f64))
            .collect();
        Self::smooth_curve(pts)
    }

    /// Unit disk slit along the radius `{(t, 0) : 0 ≤ t ≤ 1}`.
    pub fn slit_disk(samples: usize) -> Self {
        Self::unit_disk(samples).with_crack(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)])
    }

    /// Hexagonal L-shape with five convex corners and one reentrant corner.
    pub fn l_shape() -> Self {
        Self::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ])
    }

    pub fn contours(&self) -> impl Iterator<Item = &[Point2]> {
        std::iter::once(self.outer_boundary.as_slice()).chain(self.holes.iter().map(Vec::as_slice))
    }

    /// Whether contour `c` is a sampled smooth curve.
    pub fn contour_is_smooth(&self, c: usize) -> bool {
        c == 0 && self.smooth_outer
    }

    pub fn contour_edges(&self) -> Vec<ContourEdge> {
        let mut edges = Vec::new();
        for (c, pts) in self.contours().enumerate() {
            let n = pts.len();
            for i in 0..n {
                edges.push(ContourEdge { from: pts[i], to: pts[(i + 1) % n], contour: c, index: i });
            }
        }
        edges
    }

    pub fn crack_segments(&self) -> Vec<(Point2, Point2)> {
        self.cracks.iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1]))).collect()
    }

    pub fn all_points(&self) -> impl Iterator<Item = &Point2> {
        self.outer_boundary.iter().chain(self.holes.iter().flatten()).chain(self.cracks.iter().flatten())
    }

    /// Diameter of the bounding box, at least 1.
    pub fn scale(&self) -> f64 {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.all_points() {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.x.is_finite() {
            return 1.0;
        }
        (hi - lo).norm().max(1.0)
    }

    /// Absolute tolerance for coincidence of points.
    pub fn length_tol(&self) -> f64 {
        1e-9 * self.scale()
    }

    /// Applies `f` to every point (used for rigid motions).
    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> Self {
        Self {
            outer_boundary: self.outer_boundary.iter().map(|&p| f(p)).collect(),
            smooth_outer: self.smooth_outer,
            holes: self.holes.iter().map(|h| h.iter().map(|&p| f(p)).collect()).collect(),
            cracks: self.cracks.iter().map(|c| c.iter().map(|&p| f(p)).collect()).collect(),
        }
    }

    pub fn on_contour(&self, p: Point2) -> bool {
        let tol = self.length_tol();
        self.contour_edges().iter().any(|e| point_segment_distance(p, e.from, e.to).0 <= tol)
    }

    pub fn on_crack(&self, p: Point2) -> bool {
        let tol = self.length_tol();
        self.crack_segments().iter().any(|&(a, b)| point_segment_distance(p, a, b).0 <= tol)
    }

    /// Strictly inside the region bounded by the contours (cracks ignored).
    pub fn inside_region(&self, p: Point2) -> bool {
        if self.on_contour(p) {
            return false;
        }
        let inside_outer = winding_number(&self.outer_boundary, p) != 0;
        inside_outer && self.holes.iter().all(|h| winding_number(h, p) == 0)
    }

    /// In the closure of the region (cracks ignored).
    pub fn in_closure(&self, p: Point2) -> bool {
        self.on_contour(p) || self.inside_region(p)
    }

    pub fn outer_is_ccw(&self) -> bool {
        signed_area2(&self.outer_boundary) > 0.0
    }
}

/// Winding number of a closed polygon around `p` (`p` must not lie on it).
pub fn winding_number(poly: &[Point2], p: Point2) -> i32 {
    let n = poly.len();
    let mut wn = 0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let side = (b - a).cross(p - a);
        if a.y <= p.y {
            if b.y > p.y && side > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && side < 0.0 {
            wn -= 1;
        }
    }
    wn
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_membership() {
        let sq = PolygonalDomain::unit_square();
        assert!(sq.inside_region(Point2::new(0.5, 0.5)));
        assert!(!sq.inside_region(Point2::new(1.5, 0.5)));
        assert!(!sq.inside_region(Point2::new(1.0, 0.5)));
        assert!(sq.in_closure(Point2::new(1.0, 0.5)));
        assert!(sq.outer_is_ccw());
    }

    #[test]
    fn hole_excluded() {
        let d = PolygonalDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 4.0),
            Point2::new(0.0, 4.0),
        ])
        .with_hole(vec![
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 2.0),
            Point2::new(2.0, 1.0),
        ]);
        assert!(!d.inside_region(Point2::new(1.5, 1.5)));
        assert!(d.inside_region(Point2::new(3.0, 3.0)));
    }
}
