//! Local cone bases from incident edge directions.

use std::f64::consts::{PI, TAU};

use super::domain::PolygonalDomain;
use super::point::{point_segment_distance, Point2};
use super::sector::{angles_equal, ccw_sweep, AngularSector, SectorSet};
use super::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaySource {
    Contour,
    Crack,
}

/// A boundary direction leaving a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub angle: f64,
    pub source: RaySource,
}

/// Every boundary or crack direction leaving `p` (unsorted, with repeats).
pub fn incident_rays(d: &PolygonalDomain, p: Point2) -> Vec<Ray> {
    let tol = d.length_tol();
    let mut rays = Vec::new();
    let mut push_segment = |a: Point2, b: Point2, source: RaySource| {
        let (dist, _) = point_segment_distance(p, a, b);
        if dist > tol {
            return;
        }
        let at_a = p.distance(a) <= tol;
        let at_b = p.distance(b) <= tol;
        if !at_b {
            rays.push(Ray { angle: p.direction_to(b), source });
        }
        if !at_a {
            rays.push(Ray { angle: p.direction_to(a), source });
        }
    };
    for e in d.contour_edges() {
        push_segment(e.from, e.to, RaySource::Contour);
    }
    for (a, b) in d.crack_segments() {
        push_segment(a, b, RaySource::Crack);
    }
    rays
}

/// Arcs of the region (cracks ignored) at a point of a contour, as
/// `(start, length)` pairs. Empty when `p` is on no contour.
fn contour_arcs(d: &PolygonalDomain, p: Point2) -> Vec<(f64, f64)> {
    let tol = d.length_tol();
    let mut arcs = Vec::new();
    for (c, pts) in d.contours().enumerate() {
        let n = pts.len();
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let cur = pts[i];
            let next = pts[(i + 1) % n];
            if cur.distance(p) <= tol {
                if d.contour_is_smooth(c) {
                    // the domain is the half-plane left of the tangent
                    let start = (next - prev).angle();
                    arcs.push((start, PI));
                } else {
                    let out = p.direction_to(next);
                    let back = p.direction_to(prev);
                    arcs.push((out, ccw_sweep(out, back)));
                }
                continue;
            }
            let (dist, _) = point_segment_distance(p, cur, next);
            if dist <= tol && next.distance(p) > tol {
                arcs.push((cur.direction_to(next), PI));
            }
        }
    }
    arcs
}

/// The angular base ω_p of the domain at `p`, measured counterclockwise
/// from the +x axis.
pub fn local_sector(d: &PolygonalDomain, p: Point2) -> Result<SectorSet, GeometryError> {
    let mut cuts: Vec<f64> = Vec::new();
    for r in incident_rays(d, p).into_iter().filter(|r| r.source == RaySource::Crack) {
        if !cuts.iter().any(|&c| angles_equal(c, r.angle)) {
            cuts.push(r.angle);
        }
    }
    cuts.sort_by(f64::total_cmp);

    let arcs = contour_arcs(d, p);
    let mut sectors = Vec::new();
    if arcs.is_empty() {
        if !d.inside_region(p) {
            return Err(GeometryError::PointOutside(p));
        }
        if cuts.is_empty() {
            return Err(GeometryError::PointNotOnBoundary(p));
        }
        let n = cuts.len();
        for i in 0..n {
            let start = cuts[i];
            let len = if n == 1 { TAU } else { ccw_sweep(start, cuts[(i + 1) % n]) };
            sectors.push(AngularSector::new(start, len)?);
        }
    } else {
        for (start, len) in arcs {
            if len <= 0.0 {
                return Err(GeometryError::InvalidSectorSet(format!("degenerate contour angle at {p}")));
            }
            let arc = AngularSector::new(start, len)?;
            let mut inside: Vec<f64> = cuts
                .iter()
                .copied()
                .filter(|&c| arc.contains(c))
                .map(|c| ccw_sweep(start, c))
                .collect();
            inside.sort_by(f64::total_cmp);
            let mut from = 0.0;
            for off in inside.into_iter().chain(std::iter::once(len)) {
                sectors.push(AngularSector::new(start + from, off - from)?);
                from = off;
            }
        }
    }
    SectorSet::new(sectors)
}
