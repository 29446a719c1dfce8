//! The unfolded boundary: every crack side becomes its own boundary arc and
//! every crack point is replaced by one vertex per side it is approached from.

mod desing;

use std::f64::consts::TAU;
use std::fmt;

use crate::geometry::{
    candidate_points, normalize_angle, point_segment_distance, vertex_census, AngularSector, GeometryError, Point2,
    PolygonalDomain, SectorSet, VertexCensus, ANGLE_TOL,
};

pub use desing::{
    desingularize, desingularize_with, straight_cone, ArcEnd, ArcShape, CollarEnd, CollarPolicy, CompactArc,
    DesingularizedBoundary, InfinityMarker,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UnfoldError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("inconsistent unfolding: {0}")]
    Inconsistent(String),
    #[error("invalid collar policy: {0}")]
    InvalidCollar(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    /// A true conical point `p_i`.
    TrueConical { index: usize },
    /// The cover `c_{jh}` of crack point `j` by its `h`-th touching component (h ≥ 1).
    CrackCover { crack: usize, cover: usize },
    /// The extra vertex `c_{j0}` carrying all isolated components of ω.
    NoCrackPart { crack: usize },
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexRole::TrueConical { index } => write!(f, "p{}", index + 1),
            VertexRole::CrackCover { crack, cover } => write!(f, "c{}.{}", crack + 1, cover),
            VertexRole::NoCrackPart { crack } => write!(f, "c{}.0", crack + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedVertex {
    pub base_point: Point2,
    pub role: VertexRole,
    /// ω^u. A single interval for crack covers; a punctured circle
    /// `(a, a + 2π)` is an interval with two distinct ends.
    pub sector: SectorSet,
    /// Number of points of ∂ω^u.
    pub boundary_count: usize,
}

impl UnfoldedVertex {
    pub fn label(&self) -> String {
        self.role.to_string()
    }

    /// ∂ω^u = ∂(closure ω^u), read on the unfolded vertex: the components are
    /// abstract intervals, so only distinct components can touch.
    pub fn is_crack_free(&self) -> bool {
        let n = self.sector.len();
        if n <= 1 {
            return true;
        }
        (0..n).all(|i| (0..n).all(|j| i == j || !self.sector.closures_meet(i, j)))
    }
}

/// One passage of the boundary walk through a point: arrive along one
/// half-edge, leave along the next. The domain occupies `sector` in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pass {
    pub point: Point2,
    pub sector: AngularSector,
    /// Index into [`UnfoldedDomain::vertices`] when the point is in V^u.
    pub vertex: Option<usize>,
}

/// A boundary arc of the unfolded domain. Its points run with the domain on
/// the left, which fixes the side of approach along cracks.
#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedArc {
    pub points: Vec<Point2>,
    /// Per segment: whether it runs along a crack.
    pub on_crack: Vec<bool>,
    /// A closed curve through no vertex of V^u.
    pub closed: bool,
    /// Pass at which the arc begins and ends (`None` for closed arcs).
    pub start: Option<Pass>,
    pub end: Option<Pass>,
}

impl UnfoldedArc {
    pub fn segment_count(&self) -> usize {
        self.on_crack.len()
    }

    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        let n = self.points.len();
        (self.points[i], self.points[(i + 1) % n])
    }

    pub fn length(&self) -> f64 {
        (0..self.segment_count()).map(|i| {
            let (a, b) = self.segment(i);
            a.distance(b)
        })
        .sum()
    }

    /// Unit normal pointing into the domain along segment `i`.
    pub fn inward_normal(&self, i: usize) -> Point2 {
        let (a, b) = self.segment(i);
        let d = b - a;
        Point2::new(-d.y, d.x) * (1.0 / d.norm())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedDomain {
    pub arcs: Vec<UnfoldedArc>,
    pub vertices: Vec<UnfoldedVertex>,
    pub census: VertexCensus,
    length_tol: f64,
}

#[derive(Debug, Clone, Copy)]
struct HalfEdge {
    from: usize,
    to: usize,
    on_crack: bool,
}

fn push_node(nodes: &mut Vec<Point2>, p: Point2, tol: f64) -> usize {
    match nodes.iter().position(|q| q.distance(p) <= tol) {
        Some(i) => i,
        None => {
            nodes.push(p);
            nodes.len() - 1
        }
    }
}

/// Splits the segment `a → b` at every node strictly inside it.
fn split_segment(nodes: &[Point2], a: usize, b: usize, tol: f64) -> Vec<usize> {
    let (pa, pb) = (nodes[a], nodes[b]);
    let mut inner: Vec<(f64, usize)> = nodes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != a && i != b)
        .filter_map(|(i, &p)| {
            let (d, t) = point_segment_distance(p, pa, pb);
            (d <= tol && t > 0.0 && t < 1.0).then_some((t, i))
        })
        .collect();
    inner.sort_by(|x, y| x.0.total_cmp(&y.0));
    std::iter::once(a).chain(inner.into_iter().map(|(_, i)| i)).chain(std::iter::once(b)).collect()
}

fn build_half_edges(d: &PolygonalDomain, nodes: &mut Vec<Point2>, tol: f64) -> Vec<HalfEdge> {
    let mut raw: Vec<(usize, usize, bool)> = Vec::new();
    for e in d.contour_edges() {
        let a = push_node(nodes, e.from, tol);
        let b = push_node(nodes, e.to, tol);
        raw.push((a, b, false));
    }
    for (p, q) in d.crack_segments() {
        let a = push_node(nodes, p, tol);
        let b = push_node(nodes, q, tol);
        raw.push((a, b, true));
    }
    let mut out = Vec::new();
    for (a, b, crack) in raw {
        let chain = split_segment(nodes, a, b, tol);
        for w in chain.windows(2) {
            out.push(HalfEdge { from: w[0], to: w[1], on_crack: crack });
            if crack {
                out.push(HalfEdge { from: w[1], to: w[0], on_crack: crack });
            }
        }
    }
    out
}

/// Turning rule at the head of `he`: take the first outgoing half-edge
/// clockwise from the reversed incoming direction. Returns the successor
/// and the sector swept in between.
fn next_half_edge(nodes: &[Point2], edges: &[HalfEdge], outgoing: &[Vec<usize>], he: usize) -> (usize, AngularSector) {
    let e = edges[he];
    let v = nodes[e.to];
    let d_in = v.direction_to(nodes[e.from]);
    let mut best: Option<(f64, usize, f64)> = None;
    for &o in &outgoing[e.to] {
        let s = v.direction_to(nodes[edges[o].to]);
        let mut sweep = normalize_angle(d_in - s);
        if sweep < ANGLE_TOL {
            sweep = TAU;
        }
        if best.is_none_or(|(b, _, _)| sweep < b) {
            best = Some((sweep, o, s));
        }
    }
    let (sweep, o, s) = best.expect("every node on a boundary walk has an outgoing half-edge");
    (o, AngularSector::new(s, sweep).expect("positive sweep"))
}

/// V^u in the order: true conical points, crack covers, no-crack parts.
fn assemble_vertices(census: &VertexCensus) -> Vec<UnfoldedVertex> {
    let mut out = Vec::new();
    for (i, (p, s)) in census.true_conical_non_crack.iter().enumerate() {
        out.push(UnfoldedVertex {
            base_point: *p,
            role: VertexRole::TrueConical { index: i },
            sector: s.clone(),
            boundary_count: 2 * s.len(),
        });
    }
    for (j, c) in census.singular_cracks.iter().enumerate() {
        for (h, comp) in c.split.crack_part.sectors().iter().enumerate() {
            out.push(UnfoldedVertex {
                base_point: c.point,
                role: VertexRole::CrackCover { crack: j, cover: h + 1 },
                sector: SectorSet::new(vec![*comp]).expect("single sector"),
                boundary_count: 2,
            });
        }
    }
    for (j, c) in census.singular_cracks.iter().enumerate() {
        if c.has_no_crack_part() {
            out.push(UnfoldedVertex {
                base_point: c.point,
                role: VertexRole::NoCrackPart { crack: j },
                sector: c.split.no_crack_part.clone(),
                boundary_count: 2 * c.split.no_crack_part.len(),
            });
        }
    }
    out
}

/// The V^u vertex a pass belongs to, if its point is in V^u.
fn pass_vertex(vertices: &[UnfoldedVertex], p: Point2, sector: &AngularSector, tol: f64) -> Option<usize> {
    let mid = sector.start() + 0.5 * sector.length();
    let mut at_point = vertices.iter().enumerate().filter(|(_, v)| v.base_point.distance(p) <= tol).peekable();
    at_point.peek()?;
    let mut fallback = None;
    for (i, v) in at_point {
        if v.sector.contains(mid) {
            return Some(i);
        }
        if matches!(v.role, VertexRole::TrueConical { .. }) {
            fallback = Some(i);
        }
    }
    fallback
}

pub fn unfold_boundary(d: &PolygonalDomain, census: &VertexCensus) -> Result<UnfoldedDomain, UnfoldError> {
    let tol = d.length_tol();
    let mut nodes = candidate_points(d);
    let edges = build_half_edges(d, &mut nodes, tol);
    let mut outgoing = vec![Vec::new(); nodes.len()];
    for (i, e) in edges.iter().enumerate() {
        outgoing[e.from].push(i);
    }
    let vertices = assemble_vertices(census);

    let mut seen = vec![false; edges.len()];
    let mut arcs = Vec::new();
    for start in 0..edges.len() {
        if seen[start] {
            continue;
        }
        // walk one boundary loop
        let mut loop_edges = Vec::new();
        let mut passes = Vec::new();
        let mut he = start;
        loop {
            if seen[he] {
                return Err(UnfoldError::Inconsistent("boundary walk re-entered a used half-edge".into()));
            }
            seen[he] = true;
            loop_edges.push(he);
            let (next, sector) = next_half_edge(&nodes, &edges, &outgoing, he);
            let p = nodes[edges[he].to];
            passes.push(Pass { point: p, sector, vertex: pass_vertex(&vertices, p, &sector, tol) });
            he = next;
            if he == start {
                break;
            }
        }
        let n = loop_edges.len();
        let cuts: Vec<usize> = (0..n).filter(|&i| passes[i].vertex.is_some()).collect();
        if cuts.is_empty() {
            arcs.push(UnfoldedArc {
                points: loop_edges.iter().map(|&e| nodes[edges[e].from]).collect(),
                on_crack: loop_edges.iter().map(|&e| edges[e].on_crack).collect(),
                closed: true,
                start: None,
                end: None,
            });
            continue;
        }
        for (ci, &c) in cuts.iter().enumerate() {
            let c_next = cuts[(ci + 1) % cuts.len()];
            let count = if c_next > c { c_next - c } else { c_next + n - c };
            let segs: Vec<usize> = (1..=count).map(|k| loop_edges[(c + k) % n]).collect();
            let mut points: Vec<Point2> = segs.iter().map(|&e| nodes[edges[e].from]).collect();
            points.push(nodes[edges[*segs.last().expect("non-empty")].to]);
            arcs.push(UnfoldedArc {
                points,
                on_crack: segs.iter().map(|&e| edges[e].on_crack).collect(),
                closed: false,
                start: Some(passes[c]),
                end: Some(passes[c_next]),
            });
        }
    }
    // sort for a walk-order independent result: by start vertex, then by
    // the first point
    arcs.sort_by(|a, b| {
        let key = |x: &UnfoldedArc| x.start.and_then(|p| p.vertex).unwrap_or(usize::MAX);
        key(a).cmp(&key(b)).then_with(|| {
            let (pa, pb) = (a.points[0], b.points[0]);
            pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y))
        })
    });

    let u = UnfoldedDomain { arcs, vertices, census: census.clone(), length_tol: tol };
    for (i, v) in u.vertices.iter().enumerate() {
        let passes = u.arcs.iter().filter(|a| a.start.and_then(|p| p.vertex) == Some(i)).count();
        if 2 * passes != v.boundary_count {
            return Err(UnfoldError::Inconsistent(format!(
                "vertex {} has {} passes for {} sector ends",
                v.label(),
                passes,
                v.boundary_count
            )));
        }
    }
    Ok(u)
}

/// Validates, takes the census and unfolds in one step.
pub fn unfold(d: &PolygonalDomain) -> Result<UnfoldedDomain, UnfoldError> {
    let census = vertex_census(d)?;
    unfold_boundary(d, &census)
}

impl UnfoldedDomain {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn boundary_count_total(&self) -> usize {
        self.vertices.iter().map(|v| v.boundary_count).sum()
    }

    pub fn length_tol(&self) -> f64 {
        self.length_tol
    }

    /// Number of singular crack points left after unfolding; always 0.
    pub fn remaining_crack_points(&self) -> usize {
        self.vertices.iter().filter(|v| !v.is_crack_free()).count()
    }

    /// Number of preimages of `p` in ∂^uΩ ∪ V^u.
    pub fn covering_multiplicity(&self, p: Point2) -> Result<usize, UnfoldError> {
        let tol = self.length_tol;
        let at_vertex = self.vertices.iter().filter(|v| v.base_point.distance(p) <= tol).count();
        if at_vertex > 0 {
            return Ok(at_vertex);
        }
        let mut count = 0;
        for arc in &self.arcs {
            let n = arc.segment_count();
            for i in 0..n {
                let (a, b) = arc.segment(i);
                let (dist, _) = point_segment_distance(p, a, b);
                if dist > tol {
                    continue;
                }
                // a passage through a polyline node is counted once, on the
                // segment that leaves it
                if b.distance(p) <= tol && (arc.closed || i + 1 < n) {
                    continue;
                }
                count += 1;
            }
        }
        if count == 0 {
            return Err(GeometryError::PointNotOnBoundary(p).into());
        }
        Ok(count)
    }
}

pub fn covering_multiplicity(u: &UnfoldedDomain, p: Point2) -> Result<usize, UnfoldError> {
    u.covering_multiplicity(p)
}
