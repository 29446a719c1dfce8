//! Enumeration and classification of the singular boundary points.

use super::classify::{classify_point, split_conical_crack, BoundaryPointClass, PointKind, SectorSplit};
use super::domain::PolygonalDomain;
use super::local::local_sector;
use super::point::{segment_intersection, Point2, SegmentIntersection};
use super::sector::SectorSet;
use super::validate::validate_domain;
use super::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrigin {
    ContourVertex,
    CurveSample,
    CrackVertex,
    Intersection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub point: Point2,
    pub origin: CandidateOrigin,
}

fn push_unique(out: &mut Vec<Candidate>, c: Candidate, tol: f64) {
    if !out.iter().any(|o| o.point.distance(c.point) <= tol) {
        out.push(c);
    }
}

/// Every point where the boundary may fail to be smooth: contour vertices,
/// crack vertices, and crack intersections with cracks or contours. The
/// order is deterministic.
pub fn candidates(d: &PolygonalDomain) -> Vec<Candidate> {
    let tol = d.length_tol();
    let mut out = Vec::new();
    for (c, pts) in d.contours().enumerate() {
        let origin = if d.contour_is_smooth(c) { CandidateOrigin::CurveSample } else { CandidateOrigin::ContourVertex };
        for &p in pts {
            push_unique(&mut out, Candidate { point: p, origin }, tol);
        }
    }
    for crack in &d.cracks {
        for &p in crack {
            push_unique(&mut out, Candidate { point: p, origin: CandidateOrigin::CrackVertex }, tol);
        }
    }
    let cracks = d.crack_segments();
    let edges = d.contour_edges();
    for (i, &(a, b)) in cracks.iter().enumerate() {
        let others = cracks[i + 1..].iter().copied().chain(edges.iter().map(|e| (e.from, e.to)));
        for (c, e) in others {
            if let SegmentIntersection::Point { at, .. } = segment_intersection(a, b, c, e, tol) {
                push_unique(&mut out, Candidate { point: at, origin: CandidateOrigin::Intersection }, tol);
            }
        }
    }
    out
}

pub fn candidate_points(d: &PolygonalDomain) -> Vec<Point2> {
    candidates(d).into_iter().map(|c| c.point).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularCrack {
    pub point: Point2,
    pub class: BoundaryPointClass,
    pub sector: SectorSet,
    pub split: SectorSplit,
    /// Number of crack covers `k_{c_j}`: components of ω, or of ω″ for
    /// conical crack points.
    pub cover_count: usize,
}

impl SingularCrack {
    pub fn has_no_crack_part(&self) -> bool {
        !self.split.no_crack_part.is_empty()
    }
}

/// Aggregated singular points of a domain.
///
/// `l` counts true conical non-crack points, `m` singular crack points,
/// `m′` conical crack points with a nonempty no-crack part, and `α` is the
/// total ramification number `Σ k_{c_j}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VertexCensus {
    pub true_conical_non_crack: Vec<(Point2, SectorSet)>,
    pub singular_cracks: Vec<SingularCrack>,
    pub artificial: Vec<Point2>,
    pub total_ramification: usize,
}

impl VertexCensus {
    pub fn l(&self) -> usize {
        self.true_conical_non_crack.len()
    }

    pub fn m(&self) -> usize {
        self.singular_cracks.len()
    }

    pub fn m_prime(&self) -> usize {
        self.singular_cracks.iter().filter(|c| c.has_no_crack_part()).count()
    }

    pub fn alpha(&self) -> usize {
        self.total_ramification
    }

    /// `l + m′ + α`, the number of vertices of the unfolded domain.
    pub fn unfolded_vertex_count(&self) -> usize {
        self.l() + self.m_prime() + self.alpha()
    }
}

pub fn vertex_census(d: &PolygonalDomain) -> Result<VertexCensus, GeometryError> {
    let report = validate_domain(d);
    if !report.ok {
        return Err(GeometryError::InvalidDomain(report));
    }
    let mut census = VertexCensus::default();
    for cand in candidates(d) {
        let sector = local_sector(d, cand.point)?;
        let class = classify_point(&sector)?;
        match class.kind {
            PointKind::TrueConicalNonCrack => census.true_conical_non_crack.push((cand.point, sector)),
            PointKind::SmoothNonCrack => {
                if cand.origin == CandidateOrigin::ContourVertex {
                    census.artificial.push(cand.point);
                }
            }
            PointKind::SmoothCrack | PointKind::ArtificialVertex => {}
            PointKind::InnerCrack | PointKind::OuterCrack | PointKind::ConicalCrack => {
                let split = if class.kind == PointKind::ConicalCrack {
                    split_conical_crack(&sector)?
                } else {
                    SectorSplit { no_crack_part: SectorSet::empty(), crack_part: sector.clone() }
                };
                let cover_count = split.crack_part.len();
                census.total_ramification += cover_count;
                census.singular_cracks.push(SingularCrack { point: cand.point, class, sector, split, cover_count });
            }
        }
    }
    Ok(census)
}
