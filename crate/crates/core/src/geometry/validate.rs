//! Structural checks on a [`PolygonalDomain`].

use std::fmt;

use super::census::candidate_points;
use super::domain::PolygonalDomain;
use super::local::incident_rays;
use super::point::{segment_intersection, signed_area2, Point2, SegmentIntersection};
use super::sector::angles_equal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NonFiniteCoordinate,
    TooFewVertices,
    DegenerateEdge,
    SelfIntersection,
    WrongOrientation,
    HoleOutside,
    HolesIntersect,
    CrackOutsideClosure,
    NonTransversalIntersection,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NonFiniteCoordinate => "non-finite coordinate",
            Self::TooFewVertices => "too few vertices",
            Self::DegenerateEdge => "degenerate edge",
            Self::SelfIntersection => "self-intersection",
            Self::WrongOrientation => "wrong orientation",
            Self::HoleOutside => "hole outside outer boundary",
            Self::HolesIntersect => "holes intersect",
            Self::CrackOutsideClosure => "crack outside closure",
            Self::NonTransversalIntersection => "non-transversal intersection",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending feature, e.g. `outer`, `hole 2`, `crack 0`.
    pub feature: String,
    pub location: Point2,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} at {}", self.feature, self.kind.as_str(), self.location)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

fn contour_name(c: usize) -> String {
    if c == 0 {
        "outer".to_string()
    } else {
        format!("hole {}", c - 1)
    }
}

fn check_simple_contour(pts: &[Point2], name: &str, tol: f64, out: &mut Vec<Violation>) {
    let n = pts.len();
    for i in 0..n {
        if pts[i].distance(pts[(i + 1) % n]) <= tol {
            out.push(Violation { kind: ViolationKind::DegenerateEdge, feature: name.into(), location: pts[i] });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let hit = segment_intersection(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n], tol);
            match hit {
                SegmentIntersection::None => {}
                SegmentIntersection::Overlap => out.push(Violation {
                    kind: ViolationKind::SelfIntersection,
                    feature: name.into(),
                    location: pts[j],
                }),
                SegmentIntersection::Point { at, .. } => {
                    if !adjacent {
                        out.push(Violation { kind: ViolationKind::SelfIntersection, feature: name.into(), location: at });
                    }
                }
            }
        }
    }
}

pub fn validate_domain(d: &PolygonalDomain) -> ValidationReport {
    let mut v = Vec::new();
    if let Some(p) = d.all_points().find(|p| !p.is_finite()) {
        v.push(Violation { kind: ViolationKind::NonFiniteCoordinate, feature: "domain".into(), location: *p });
        return ValidationReport { ok: false, violations: v };
    }
    let tol = d.length_tol();

    for (c, pts) in d.contours().enumerate() {
        let name = contour_name(c);
        if pts.len() < 3 {
            v.push(Violation {
                kind: ViolationKind::TooFewVertices,
                feature: name,
                location: pts.first().copied().unwrap_or_default(),
            });
            continue;
        }
        check_simple_contour(pts, &name, tol, &mut v);
        let area = signed_area2(pts);
        let good = if c == 0 { area > 0.0 } else { area < 0.0 };
        if !good {
            v.push(Violation { kind: ViolationKind::WrongOrientation, feature: name, location: pts[0] });
        }
    }
    if v.iter().any(|x| x.kind == ViolationKind::TooFewVertices) {
        return ValidationReport { ok: false, violations: v };
    }

    // holes: strictly inside the outer contour and pairwise disjoint
    let outer = PolygonalDomain::polygon(d.outer_boundary.clone());
    for (h, hole) in d.holes.iter().enumerate() {
        if hole.iter().any(|&p| !outer.inside_region(p)) {
            v.push(Violation { kind: ViolationKind::HoleOutside, feature: contour_name(h + 1), location: hole[0] });
        }
        for (g, other) in d.holes.iter().enumerate().skip(h + 1) {
            let other_poly = PolygonalDomain::polygon(other.clone());
            let this_poly = PolygonalDomain::polygon(hole.clone());
            let mut clash = hole.iter().any(|&p| other_poly.in_closure(p)) || other.iter().any(|&p| this_poly.in_closure(p));
            let (n, m) = (hole.len(), other.len());
            for i in 0..n {
                for j in 0..m {
                    let hit = segment_intersection(hole[i], hole[(i + 1) % n], other[j], other[(j + 1) % m], tol);
                    clash |= hit != SegmentIntersection::None;
                }
            }
            if clash {
                v.push(Violation {
                    kind: ViolationKind::HolesIntersect,
                    feature: format!("{} / {}", contour_name(h + 1), contour_name(g + 1)),
                    location: hole[0],
                });
            }
        }
    }

    // cracks: inside the closed region
    let edges = d.contour_edges();
    for (k, crack) in d.cracks.iter().enumerate() {
        let name = format!("crack {k}");
        if crack.len() < 2 {
            v.push(Violation {
                kind: ViolationKind::TooFewVertices,
                feature: name,
                location: crack.first().copied().unwrap_or_default(),
            });
            continue;
        }
        for w in crack.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.distance(b) <= tol {
                v.push(Violation { kind: ViolationKind::DegenerateEdge, feature: name.clone(), location: a });
                continue;
            }
            let mut params = vec![0.0, 1.0];
            for e in &edges {
                match segment_intersection(a, b, e.from, e.to, tol) {
                    SegmentIntersection::Point { s, .. } => params.push(s),
                    SegmentIntersection::Overlap => v.push(Violation {
                        kind: ViolationKind::NonTransversalIntersection,
                        feature: format!("{name} / {}", contour_name(e.contour)),
                        location: e.from,
                    }),
                    SegmentIntersection::None => {}
                }
            }
            params.sort_by(f64::total_cmp);
            let outside = std::iter::once(a)
                .chain(std::iter::once(b))
                .chain(params.windows(2).map(|p| a.lerp(b, 0.5 * (p[0] + p[1]))))
                .find(|&q| !d.in_closure(q));
            if let Some(q) = outside {
                v.push(Violation { kind: ViolationKind::CrackOutsideClosure, feature: name.clone(), location: q });
            }
        }
    }

    // transversality at every junction
    for p in candidate_points(d) {
        let rays = incident_rays(d, p);
        let mut clash = false;
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                clash |= angles_equal(rays[i].angle, rays[j].angle);
            }
        }
        if clash {
            v.push(Violation {
                kind: ViolationKind::NonTransversalIntersection,
                feature: "junction".into(),
                location: p,
            });
        }
    }

    ValidationReport { ok: v.is_empty(), violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_valid() {
        let r = validate_domain(&PolygonalDomain::unit_square());
        assert!(r.ok, "{r}");
    }

    #[test]
    fn crack_leaving_square() {
        let d = PolygonalDomain::unit_square().with_crack(vec![Point2::new(0.5, 0.5), Point2::new(1.5, 0.5)]);
        let r = validate_domain(&d);
        assert!(!r.ok);
        assert!(r.has(ViolationKind::CrackOutsideClosure));
    }

    #[test]
    fn crack_reentering_is_outside() {
        // dips below the bottom edge between two boundary crossings
        let d = PolygonalDomain::unit_square().with_crack(vec![
            Point2::new(0.2, 0.5),
            Point2::new(0.5, -0.5),
            Point2::new(0.8, 0.5),
        ]);
        assert!(validate_domain(&d).has(ViolationKind::CrackOutsideClosure));
    }

    #[test]
    fn tangential_cracks() {
        let d = PolygonalDomain::unit_square()
            .with_crack(vec![Point2::new(0.2, 0.5), Point2::new(0.6, 0.5)])
            .with_crack(vec![Point2::new(0.4, 0.5), Point2::new(0.8, 0.5)]);
        let r = validate_domain(&d);
        assert!(r.has(ViolationKind::NonTransversalIntersection), "{r}");
    }

    #[test]
    fn crack_along_edge() {
        let d = PolygonalDomain::unit_square().with_crack(vec![Point2::new(0.2, 0.0), Point2::new(0.6, 0.0)]);
        assert!(validate_domain(&d).has(ViolationKind::NonTransversalIntersection));
    }

    #[test]
    fn crossing_cracks_are_fine() {
        let d = PolygonalDomain::unit_square()
            .with_crack(vec![Point2::new(0.2, 0.5), Point2::new(0.8, 0.5)])
            .with_crack(vec![Point2::new(0.5, 0.2), Point2::new(0.5, 0.8)]);
        let r = validate_domain(&d);
        assert!(r.ok, "{r}");
    }

    #[test]
    fn orientation_and_size() {
        let mut cw = PolygonalDomain::unit_square();
        cw.outer_boundary.reverse();
        assert!(validate_domain(&cw).has(ViolationKind::WrongOrientation));
        let tiny = PolygonalDomain::polygon(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]);
        assert!(validate_domain(&tiny).has(ViolationKind::TooFewVertices));
        let bow = PolygonalDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!(validate_domain(&bow).has(ViolationKind::SelfIntersection));
    }

    #[test]
    fn holes() {
        let big = PolygonalDomain::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 4.0),
            Point2::new(0.0, 4.0),
        ]);
        let hole = |x: f64, y: f64| {
            vec![Point2::new(x, y), Point2::new(x, y + 1.0), Point2::new(x + 1.0, y + 1.0), Point2::new(x + 1.0, y)]
        };
        assert!(validate_domain(&big.clone().with_hole(hole(1.0, 1.0))).ok);
        assert!(validate_domain(&big.clone().with_hole(hole(3.5, 1.0))).has(ViolationKind::HoleOutside));
        let two = big.with_hole(hole(1.0, 1.0)).with_hole(hole(1.5, 1.5));
        assert!(validate_domain(&two).has(ViolationKind::HolesIntersect));
    }

    #[test]
    fn slit_disk_is_valid() {
        let r = validate_domain(&PolygonalDomain::slit_disk(64));
        assert!(r.ok, "{r}");
    }
}
