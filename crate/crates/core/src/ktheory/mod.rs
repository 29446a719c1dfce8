//! K-groups of the layer potentials algebra, its indicial algebra and of
//! straight cones, plus a rank solver for six-term exact sequences.
//!
//! Every group in scope is free abelian, so a group is just its rank.

mod six_term;

use std::fmt;

use crate::groupoid::BoundaryGroupoid;

pub use six_term::{solve_six_term, MapFact, SixTermData, SixTermSolution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KTheoryError {
    #[error("torsion {0:?} is not supported; all groups are free")]
    Torsion(Vec<u64>),
    #[error("inconsistent six-term data: {0}")]
    Inconsistent(String),
    #[error("underdetermined six-term data: {0}")]
    Underdetermined(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeAbelianGroup {
    pub rank: usize,
}

impl FreeAbelianGroup {
    pub const ZERO: Self = Self { rank: 0 };

    pub fn new(rank: usize) -> Self {
        Self { rank }
    }

    /// Group `Z^rank ⊕ ⨁ Z/t_i`; only the torsion-free case is accepted.
    pub fn from_invariants(rank: usize, torsion: &[u64]) -> Result<Self, KTheoryError> {
        let nontrivial: Vec<u64> = torsion.iter().copied().filter(|&t| t != 1).collect();
        if !nontrivial.is_empty() {
            return Err(KTheoryError::Torsion(nontrivial));
        }
        Ok(Self { rank })
    }
}

impl fmt::Display for FreeAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            0 => f.write_str("0"),
            1 => f.write_str("Z"),
            r => write!(f, "Z^{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KPair {
    pub k0: FreeAbelianGroup,
    pub k1: FreeAbelianGroup,
}

impl KPair {
    pub fn new(k0: usize, k1: usize) -> Self {
        Self { k0: FreeAbelianGroup::new(k0), k1: FreeAbelianGroup::new(k1) }
    }
}

impl fmt::Display for KPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0={} K1={}", self.k0, self.k1)
    }
}

/// K-theory of the boundary algebra C*(G). For a groupoid without vertices
/// C*(G) is the compact operators and `smooth_case` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryAlgebraK {
    pub k: KPair,
    pub smooth_case: bool,
}

/// A straight cone has vanishing K-theory whatever its base.
pub fn k_straight_cone(k: usize, positive_dimensional: bool) -> KPair {
    let _ = (k, positive_dimensional);
    KPair::default()
}

/// `⊕ M_k(C₀(R⁺))` (or `K ⊗ C₀(R⁺)`) has `K₀ = 0`, `K₁ = Z^N`.
pub fn k_indicial(g: &BoundaryGroupoid) -> KPair {
    KPair::new(0, g.vertex_count())
}

/// Solves the sequence `0 → K → C*(G) → indicial algebra → 0` with δ onto.
/// Without vertices C*(G) is the compact operators.
pub fn k_boundary_algebra(g: &BoundaryGroupoid) -> BoundaryAlgebraK {
    match g.vertex_count() {
        0 => BoundaryAlgebraK { k: KPair::new(1, 0), smooth_case: true },
        n => {
            let data = SixTermData::layer_potential_preset(n);
            let sol = solve_six_term(&data).expect("δ onto Z from Z^n with n ≥ 1 is consistent");
            BoundaryAlgebraK { k: sol.middle, smooth_case: false }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{build_abstract_groupoid, ConeBaseRecord};

    #[test]
    fn display() {
        assert_eq!(KPair::new(0, 3).to_string(), "K0=0 K1=Z^3");
        assert_eq!(KPair::new(1, 0).to_string(), "K0=Z K1=0");
    }

    #[test]
    fn torsion_rejected() {
        assert!(FreeAbelianGroup::from_invariants(2, &[1, 1]).is_ok());
        assert_eq!(FreeAbelianGroup::from_invariants(2, &[2]), Err(KTheoryError::Torsion(vec![2])));
    }

    #[test]
    fn counts() {
        let r = ConeBaseRecord::new(1, 2, false).unwrap();
        let g = build_abstract_groupoid(&[r; 5]);
        assert_eq!(k_indicial(&g), KPair::new(0, 5));
        assert_eq!(k_boundary_algebra(&g).k, KPair::new(0, 4));
        let empty = build_abstract_groupoid(&[]);
        let b = k_boundary_algebra(&empty);
        assert!(b.smooth_case);
        assert_eq!(b.k, KPair::new(1, 0));
    }
}
