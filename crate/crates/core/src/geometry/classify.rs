//! Classification of boundary points from their local angular base.

use std::fmt;

use super::sector::{angles_equal, Closure, SectorSet};
use super::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    SmoothNonCrack,
    SmoothCrack,
    TrueConicalNonCrack,
    InnerCrack,
    OuterCrack,
    ConicalCrack,
    /// A listed polygon vertex where the boundary is actually straight.
    ArtificialVertex,
}

impl PointKind {
    pub fn is_crack(self) -> bool {
        matches!(self, Self::SmoothCrack | Self::InnerCrack | Self::OuterCrack | Self::ConicalCrack)
    }

    /// Crack points that are genuine singularities of the boundary.
    pub fn is_singular_crack(self) -> bool {
        matches!(self, Self::InnerCrack | Self::OuterCrack | Self::ConicalCrack)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SmoothNonCrack => "smooth",
            Self::SmoothCrack => "smooth-crack",
            Self::TrueConicalNonCrack => "true-conical",
            Self::InnerCrack => "inner-crack",
            Self::OuterCrack => "outer-crack",
            Self::ConicalCrack => "conical-crack",
            Self::ArtificialVertex => "artificial",
        }
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryPointClass {
    pub kind: PointKind,
    /// Number of sides from which the point is approached; 0 for non-crack kinds.
    pub ramification: usize,
}

/// ω = ω′ ∪ ω″: components whose closures are isolated, and the rest.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SectorSplit {
    pub no_crack_part: SectorSet,
    pub crack_part: SectorSet,
}

fn ensure_valid(s: &SectorSet) -> Result<(), GeometryError> {
    if s.is_empty() {
        return Err(GeometryError::InvalidSectorSet("empty sector set".into()));
    }
    Ok(())
}

fn same_point_set(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| angles_equal(*x, *y)))
}

pub fn classify_point(s: &SectorSet) -> Result<BoundaryPointClass, GeometryError> {
    ensure_valid(s)?;
    let crack = !same_point_set(&s.boundary(), &s.closure_boundary());
    if !crack {
        let kind = if s.len() == 1 && s.sectors()[0].is_half_circle() {
            PointKind::SmoothNonCrack
        } else {
            PointKind::TrueConicalNonCrack
        };
        return Ok(BoundaryPointClass { kind, ramification: 0 });
    }
    let kind = match s.closure() {
        Closure::FullCircle => {
            if s.len() == 2 && s.sectors().iter().all(|c| c.is_half_circle()) {
                PointKind::SmoothCrack
            } else {
                PointKind::InnerCrack
            }
        }
        Closure::Arcs(arcs)
            if arcs.len() == 1 && (arcs[0].1 - std::f64::consts::PI).abs() < super::ANGLE_TOL =>
        {
            PointKind::OuterCrack
        }
        Closure::Arcs(_) => PointKind::ConicalCrack,
    };
    let ramification = match kind {
        PointKind::ConicalCrack => {
            let split = split_conical_crack(s)?;
            split.crack_part.len() + usize::from(!split.no_crack_part.is_empty())
        }
        _ => s.len(),
    };
    Ok(BoundaryPointClass { kind, ramification })
}

pub fn split_conical_crack(s: &SectorSet) -> Result<SectorSplit, GeometryError> {
    ensure_valid(s)?;
    let n = s.len();
    let mut isolated = Vec::new();
    let mut touching = Vec::new();
    for i in 0..n {
        let meets = (0..n).any(|j| s.closures_meet(i, j));
        if meets {
            touching.push(s.sectors()[i]);
        } else {
            isolated.push(s.sectors()[i]);
        }
    }
    Ok(SectorSplit {
        no_crack_part: SectorSet::new(isolated)?,
        crack_part: SectorSet::new(touching)?,
    })
}

pub fn ramification_number(s: &SectorSet) -> Result<usize, GeometryError> {
    let class = classify_point(s)?;
    if !class.kind.is_crack() {
        return Err(GeometryError::NotACrackPoint);
    }
    Ok(class.ramification)
}

/// Number of unfolded crack covers `c_{j1}, …, c_{jk}` over a crack point:
/// components of ω for inner/outer cracks, components of ω″ for conical ones.
/// The extra no-crack cover `c_{j0}` is not included.
pub fn crack_cover_count(s: &SectorSet) -> Result<usize, GeometryError> {
    let class = classify_point(s)?;
    match class.kind {
        PointKind::ConicalCrack => Ok(split_conical_crack(s)?.crack_part.len()),
        k if k.is_crack() => Ok(s.len()),
        _ => Err(GeometryError::NotACrackPoint),
    }
}
