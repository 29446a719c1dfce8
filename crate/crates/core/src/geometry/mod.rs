//! Planar domains with cracks and classification of their boundary points.

mod census;
mod classify;
mod domain;
mod local;
mod point;
mod sector;
mod validate;

pub use census::{candidate_points, candidates, vertex_census, Candidate, CandidateOrigin, SingularCrack, VertexCensus};
pub use classify::{
    classify_point, crack_cover_count, ramification_number, split_conical_crack, BoundaryPointClass, PointKind,
    SectorSplit,
};
pub use domain::{winding_number, ContourEdge, PolygonalDomain};
pub use local::{incident_rays, local_sector, Ray, RaySource};
pub use point::{point_segment_distance, segment_intersection, signed_area2, Point2, SegmentIntersection};
pub use sector::{angles_equal, ccw_sweep, circular_distance, normalize_angle, AngularSector, Closure, SectorSet, ANGLE_TOL};
pub use validate::{validate_domain, ValidationReport, Violation, ViolationKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid sector set: {0}")]
    InvalidSectorSet(String),
    #[error("not a crack point")]
    NotACrackPoint,
    #[error("point {0} is not on the boundary")]
    PointNotOnBoundary(Point2),
    #[error("point {0} lies outside the closed domain")]
    PointOutside(Point2),
    #[error("invalid domain: {0}")]
    InvalidDomain(ValidationReport),
}
