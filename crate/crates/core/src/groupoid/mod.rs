//! Combinatorial model of the boundary groupoid: an open dense pair-groupoid
//! stratum over the smooth boundary and one closed invariant stratum
//! `P_k × (R⁺ × {v})` per vertex.

use std::fmt;

use crate::unfold::{DesingularizedBoundary, UnfoldedVertex};

pub const ALGEBROID_TAG: &str = "b-tangent bundle of M";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupoidError {
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("invalid cone base record: {0}")]
    InvalidConeBase(String),
}

/// Abstract cone base for the higher-dimensional statements: only counts of
/// connected components are recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeBaseRecord {
    /// Connected components of ω.
    pub k: usize,
    /// Connected components of ∂ω.
    pub components: usize,
    /// Whether ∂ω is a positive-dimensional manifold (n ≥ 3).
    pub positive_dimensional: bool,
}

impl ConeBaseRecord {
    pub fn new(k: usize, components: usize, positive_dimensional: bool) -> Result<Self, GroupoidError> {
        if k == 0 {
            return Err(GroupoidError::InvalidConeBase("ω needs at least one component".into()));
        }
        if components == 0 {
            return Err(GroupoidError::InvalidConeBase("∂ω is empty".into()));
        }
        if !positive_dimensional && !components.is_multiple_of(2) {
            // in the plane ∂ω is a set of interval endpoints
            return Err(GroupoidError::InvalidConeBase(format!(
                "a zero-dimensional ∂ω has an even number of points, got {components}"
            )));
        }
        Ok(Self { k, components, positive_dimensional })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeBase {
    Planar(UnfoldedVertex),
    Abstract(ConeBaseRecord),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexStratum {
    pub label: String,
    /// Number of points of ∂ω^u for planar vertices, or of components of ∂ω.
    pub k: usize,
    pub base: ConeBase,
}

impl VertexStratum {
    pub fn positive_dimensional(&self) -> bool {
        matches!(self.base, ConeBase::Abstract(r) if r.positive_dimensional)
    }

    pub fn boundary_connected(&self) -> bool {
        match &self.base {
            ConeBase::Planar(_) => false,
            ConeBase::Abstract(r) => r.components == 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StratumId {
    Interior,
    Vertex(usize),
    /// All of ∂M.
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StratumDescriptor {
    /// `M₀ × M₀`.
    PairGroupoid,
    /// `(∂ω_v)² × (R⁺ × {v})`.
    Vertex { label: String, k: usize, positive_dimensional: bool },
    DisjointUnion(Vec<StratumDescriptor>),
}

impl fmt::Display for StratumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PairGroupoid => f.write_str("pair groupoid M0 x M0"),
            Self::Vertex { label, k, positive_dimensional: false } => write!(f, "P_{k} x (R+ x {{{label}}})"),
            Self::Vertex { label, positive_dimensional: true, .. } => write!(f, "(dw x dw) x (R+ x {{{label}}})"),
            Self::DisjointUnion(parts) if parts.is_empty() => f.write_str("empty"),
            Self::DisjointUnion(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&s.join(" u "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicialAlgebra {
    /// `M_k(C₀(R⁺))`.
    Matrix { k: usize },
    /// `K ⊗ C₀(R⁺)`.
    CompactTensor,
}

impl fmt::Display for IndicialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Matrix { k } => write!(f, "M_{k}(C0(R+))"),
            Self::CompactTensor => f.write_str("K (x) C0(R+)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicialSummand {
    pub label: String,
    pub algebra: IndicialAlgebra,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGroupoid {
    /// Unit space, absent for groupoids built from abstract records.
    pub units: Option<DesingularizedBoundary>,
    pub interior_stratum: StratumDescriptor,
    pub vertex_strata: Vec<VertexStratum>,
    pub amenable: bool,
    pub algebroid_tag: &'static str,
}

pub fn build_groupoid(m: &DesingularizedBoundary) -> BoundaryGroupoid {
    let vertex_strata = m
        .vertices
        .iter()
        .map(|v| VertexStratum { label: v.label(), k: v.boundary_count, base: ConeBase::Planar(v.clone()) })
        .collect();
    BoundaryGroupoid {
        units: Some(m.clone()),
        interior_stratum: StratumDescriptor::PairGroupoid,
        vertex_strata,
        amenable: true,
        algebroid_tag: ALGEBROID_TAG,
    }
}

/// Groupoid with one vertex stratum per abstract cone base, labelled `v1, v2, …`.
pub fn build_abstract_groupoid(records: &[ConeBaseRecord]) -> BoundaryGroupoid {
    let vertex_strata = records
        .iter()
        .enumerate()
        .map(|(i, r)| VertexStratum { label: format!("v{}", i + 1), k: r.components, base: ConeBase::Abstract(*r) })
        .collect();
    BoundaryGroupoid {
        units: None,
        interior_stratum: StratumDescriptor::PairGroupoid,
        vertex_strata,
        amenable: true,
        algebroid_tag: ALGEBROID_TAG,
    }
}

impl BoundaryGroupoid {
    pub fn vertex_count(&self) -> usize {
        self.vertex_strata.len()
    }

    /// No vertex strata: the whole groupoid is the pair groupoid.
    pub fn is_pair_groupoid(&self) -> bool {
        self.vertex_strata.is_empty()
    }

    fn vertex_descriptor(s: &VertexStratum) -> StratumDescriptor {
        StratumDescriptor::Vertex { label: s.label.clone(), k: s.k, positive_dimensional: s.positive_dimensional() }
    }

    pub fn restrict(&self, id: &StratumId) -> Result<StratumDescriptor, GroupoidError> {
        match id {
            StratumId::Interior => Ok(self.interior_stratum.clone()),
            StratumId::Vertex(i) => self
                .vertex_strata
                .get(*i)
                .map(Self::vertex_descriptor)
                .ok_or_else(|| GroupoidError::UnknownStratum(format!("vertex {i}"))),
            StratumId::Boundary => {
                Ok(StratumDescriptor::DisjointUnion(self.vertex_strata.iter().map(Self::vertex_descriptor).collect()))
            }
        }
    }

    /// Looks a stratum up by label (`interior`, `boundary`, or a vertex label).
    pub fn stratum_by_name(&self, name: &str) -> Result<StratumId, GroupoidError> {
        match name {
            "interior" => Ok(StratumId::Interior),
            "boundary" => Ok(StratumId::Boundary),
            _ => self
                .vertex_strata
                .iter()
                .position(|s| s.label == name)
                .map(StratumId::Vertex)
                .ok_or_else(|| GroupoidError::UnknownStratum(name.to_string())),
        }
    }

    pub fn indicial_summands(&self) -> Vec<IndicialSummand> {
        self.vertex_strata
            .iter()
            .map(|s| IndicialSummand {
                label: s.label.clone(),
                algebra: if s.positive_dimensional() {
                    IndicialAlgebra::CompactTensor
                } else {
                    IndicialAlgebra::Matrix { k: s.k }
                },
            })
            .collect()
    }

    /// Whether the groupoid is the b-groupoid, i.e. every ∂ω is connected.
    /// Planar vertices never have connected ∂ω.
    pub fn is_b_groupoid(&self) -> bool {
        self.vertex_strata.iter().all(VertexStratum::boundary_connected)
    }

    /// Equivalence is decided by the number of vertex strata.
    pub fn equivalent(&self, other: &BoundaryGroupoid) -> bool {
        self.vertex_count() == other.vertex_count()
    }
}

pub fn restrict(g: &BoundaryGroupoid, id: &StratumId) -> Result<StratumDescriptor, GroupoidError> {
    g.restrict(id)
}

pub fn indicial_summands(g: &BoundaryGroupoid) -> Vec<IndicialSummand> {
    g.indicial_summands()
}

pub fn is_b_groupoid(g: &BoundaryGroupoid) -> bool {
    g.is_b_groupoid()
}

pub fn equivalent(a: &BoundaryGroupoid, b: &BoundaryGroupoid) -> bool {
    a.equivalent(b)
}
