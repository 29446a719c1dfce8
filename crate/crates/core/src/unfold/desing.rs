//! The desingularized boundary M: unfolded arcs cut at the vertices and
//! capped by collar charts `[0, ε_v)`.

use super::{UnfoldError, UnfoldedDomain, UnfoldedVertex, VertexRole};
use crate::geometry::SectorSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CollarPolicy {
    /// `ε_v = min(1, half the shortest incident edge)`.
    Default,
    /// The same ε at every vertex; must not exceed half the shortest incident edge.
    Uniform(f64),
    /// `factor · default` with `0 < factor ≤ 1`.
    Scaled(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcShape {
    /// Compact interval with a collar at each end.
    Interval,
    /// Closed curve without collars.
    Circle,
    /// `[0, ∞)` with one collar, as for a straight cone.
    Ray,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcEnd {
    Start,
    End,
}

/// A collar chart `[0, ε)` gluing an arc end to a point of `{v} × ∂ω^u_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarEnd {
    pub vertex: usize,
    /// Endpoint of ω^u_v, unwrapped so that the two ends of a punctured
    /// circle stay distinct.
    pub angle: f64,
    pub epsilon: f64,
    pub arc: usize,
    pub end: ArcEnd,
}

/// Boundary point of M behind which a hyperface at infinity sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfinityMarker {
    pub vertex: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactArc {
    pub shape: ArcShape,
    /// Arclength of the smooth part left after removing collars
    /// (`f64::INFINITY` for rays).
    pub interior_length: f64,
    pub start_collar: Option<usize>,
    pub end_collar: Option<usize>,
    /// Index of the unfolded arc this came from.
    pub source: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesingularizedBoundary {
    pub vertices: Vec<UnfoldedVertex>,
    pub arcs: Vec<CompactArc>,
    pub collars: Vec<CollarEnd>,
    pub infinity_markers: Vec<InfinityMarker>,
    /// Weight index `a = (n − 1)/2` of the boundary Sobolev spaces.
    pub sobolev_index: f64,
}

impl DesingularizedBoundary {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn collar_count(&self) -> usize {
        self.collars.len()
    }

    pub fn is_smooth(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn default_epsilons(u: &UnfoldedDomain) -> Vec<f64> {
    let mut eps = vec![f64::INFINITY; u.vertices.len()];
    for arc in &u.arcs {
        let n = arc.segment_count();
        if let Some(v) = arc.start.and_then(|p| p.vertex) {
            let (a, b) = arc.segment(0);
            eps[v] = eps[v].min(0.5 * a.distance(b));
        }
        if let Some(v) = arc.end.and_then(|p| p.vertex) {
            let (a, b) = arc.segment(n - 1);
            eps[v] = eps[v].min(0.5 * a.distance(b));
        }
    }
    eps.into_iter().map(|e| e.min(1.0)).collect()
}

pub fn desingularize(u: &UnfoldedDomain) -> Result<DesingularizedBoundary, UnfoldError> {
    desingularize_with(u, CollarPolicy::Default)
}

pub fn desingularize_with(u: &UnfoldedDomain, policy: CollarPolicy) -> Result<DesingularizedBoundary, UnfoldError> {
    let base = default_epsilons(u);
    let eps: Vec<f64> = match policy {
        CollarPolicy::Default => base,
        CollarPolicy::Uniform(e) => {
            let cap = base.iter().map(|b| b.max(0.0)).fold(f64::INFINITY, f64::min);
            if !(e > 0.0 && e <= cap) {
                return Err(UnfoldError::InvalidCollar(format!("uniform collar {e} outside (0, {cap}]")));
            }
            vec![e; base.len()]
        }
        CollarPolicy::Scaled(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(UnfoldError::InvalidCollar(format!("scale factor {f} outside (0, 1]")));
            }
            base.iter().map(|b| f * b).collect()
        }
    };

    let mut arcs = Vec::with_capacity(u.arcs.len());
    let mut collars = Vec::new();
    for (i, arc) in u.arcs.iter().enumerate() {
        if arc.closed {
            arcs.push(CompactArc {
                shape: ArcShape::Circle,
                interior_length: arc.length(),
                start_collar: None,
                end_collar: None,
                source: Some(i),
            });
            continue;
        }
        let mut length = arc.length();
        let mut start_collar = None;
        let mut end_collar = None;
        if let Some(pass) = arc.start {
            let v = pass.vertex.ok_or_else(|| UnfoldError::Inconsistent("arc starts off V^u".into()))?;
            length -= eps[v];
            start_collar = Some(collars.len());
            collars.push(CollarEnd { vertex: v, angle: pass.sector.start(), epsilon: eps[v], arc: i, end: ArcEnd::Start });
        }
        if let Some(pass) = arc.end {
            let v = pass.vertex.ok_or_else(|| UnfoldError::Inconsistent("arc ends off V^u".into()))?;
            length -= eps[v];
            end_collar = Some(collars.len());
            collars.push(CollarEnd {
                vertex: v,
                angle: pass.sector.start() + pass.sector.length(),
                epsilon: eps[v],
                arc: i,
                end: ArcEnd::End,
            });
        }
        arcs.push(CompactArc {
            shape: ArcShape::Interval,
            interior_length: length.max(0.0),
            start_collar,
            end_collar,
            source: Some(i),
        });
    }
    let infinity_markers = collars.iter().map(|c| InfinityMarker { vertex: c.vertex, angle: c.angle }).collect();
    Ok(DesingularizedBoundary { vertices: u.vertices.clone(), arcs, collars, infinity_markers, sobolev_index: 0.5 })
}

/// M for the straight cone `(0, ∞) · ω`: one ray `[0, ∞)` per point of ∂ω.
pub fn straight_cone(omega: &SectorSet) -> Result<DesingularizedBoundary, UnfoldError> {
    if omega.is_empty() {
        return Err(UnfoldError::Inconsistent("empty cone base".into()));
    }
    let vertex = UnfoldedVertex {
        base_point: Default::default(),
        role: VertexRole::TrueConical { index: 0 },
        sector: omega.clone(),
        boundary_count: 2 * omega.len(),
    };
    let mut arcs = Vec::new();
    let mut collars = Vec::new();
    for s in omega.sectors() {
        for (angle, end) in [(s.start(), ArcEnd::Start), (s.start() + s.length(), ArcEnd::End)] {
            collars.push(CollarEnd { vertex: 0, angle, epsilon: 1.0, arc: arcs.len(), end });
            arcs.push(CompactArc {
                shape: ArcShape::Ray,
                interior_length: f64::INFINITY,
                start_collar: Some(collars.len() - 1),
                end_collar: None,
                source: None,
            });
        }
    }
    let infinity_markers = collars.iter().map(|c| InfinityMarker { vertex: c.vertex, angle: c.angle }).collect();
    Ok(DesingularizedBoundary { vertices: vec![vertex], arcs, collars, infinity_markers, sobolev_index: 0.5 })
}
