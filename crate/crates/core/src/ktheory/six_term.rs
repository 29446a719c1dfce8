//! Rank bookkeeping around the cyclic sequence
//!
//! ```text
//! K0(I) → K0(A) → K0(Q)
//!   ↑δ               ↓exp
//! K1(Q) ← K1(A) ← K1(I)
//! ```
//!
//! for an ideal `I` of `A` with quotient `Q`.

use super::{FreeAbelianGroup, KPair, KTheoryError};

/// What is known about a connecting map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapFact {
    Onto,
    Zero,
    /// Image of the given rank.
    Rank(usize),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SixTermData {
    pub ideal: KPair,
    pub quotient: KPair,
    /// Index map `δ : K1(Q) → K0(I)`.
    pub delta: MapFact,
    /// `coker δ` is free (the image is a direct summand).
    pub delta_split: bool,
    /// Exponential map `K0(Q) → K1(I)`.
    pub exponential: MapFact,
    pub exponential_split: bool,
}

impl SixTermData {
    /// The two boolean facts about δ; the exponential map is taken to be zero.
    pub fn from_flags(ideal: KPair, quotient: KPair, delta_onto: bool, delta_split: bool) -> Self {
        Self {
            ideal,
            quotient,
            delta: if delta_onto { MapFact::Onto } else { MapFact::Unknown },
            delta_split,
            exponential: MapFact::Zero,
            exponential_split: true,
        }
    }

    /// `0 → K → C*(G) → ⊕ M_k(C₀(R⁺)) → 0` with `l` summands: `K_*(K) = (Z, 0)`,
    /// the quotient has `(0, Z^l)`, and δ is onto.
    pub fn layer_potential_preset(l: usize) -> Self {
        Self::from_flags(KPair::new(1, 0), KPair::new(0, l), true, true)
    }

    pub fn with_delta(mut self, fact: MapFact) -> Self {
        self.delta = fact;
        self
    }

    pub fn with_exponential(mut self, fact: MapFact, split: bool) -> Self {
        self.exponential = fact;
        self.exponential_split = split;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SixTermSolution {
    pub middle: KPair,
    pub delta_image_rank: usize,
    pub exponential_image_rank: usize,
}

impl SixTermSolution {
    /// Ranks in cyclic order `K0(I), K0(A), K0(Q), K1(I), K1(A), K1(Q)`.
    pub fn hexagon(&self, d: &SixTermData) -> [usize; 6] {
        [
            d.ideal.k0.rank,
            self.middle.k0.rank,
            d.quotient.k0.rank,
            d.ideal.k1.rank,
            self.middle.k1.rank,
            d.quotient.k1.rank,
        ]
    }

    pub fn alternating_sum(&self, d: &SixTermData) -> i64 {
        self.hexagon(d).iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

/// Rank of the image of a map `Z^from → Z^to` described by `fact`.
fn image_rank(name: &str, fact: MapFact, from: usize, to: usize) -> Result<usize, KTheoryError> {
    match fact {
        MapFact::Onto if from < to => Err(KTheoryError::Inconsistent(format!(
            "{name} cannot map rank {from} onto rank {to}"
        ))),
        MapFact::Onto => Ok(to),
        MapFact::Zero => Ok(0),
        MapFact::Rank(r) if r > from.min(to) => Err(KTheoryError::Inconsistent(format!(
            "{name} image rank {r} exceeds min({from}, {to})"
        ))),
        MapFact::Rank(r) => Ok(r),
        MapFact::Unknown if from.min(to) == 0 => Ok(0),
        MapFact::Unknown => Err(KTheoryError::Underdetermined(format!("nothing is known about {name}"))),
    }
}

/// The cokernel of the map is free when the map is zero, onto, or split.
fn cokernel_free(fact: MapFact, image: usize, to: usize, split: bool) -> bool {
    split || image == 0 || (fact == MapFact::Onto && image == to)
}

pub fn solve_six_term(d: &SixTermData) -> Result<SixTermSolution, KTheoryError> {
    let (i0, i1) = (d.ideal.k0.rank, d.ideal.k1.rank);
    let (q0, q1) = (d.quotient.k0.rank, d.quotient.k1.rank);
    let rd = image_rank("δ", d.delta, q1, i0)?;
    let re = image_rank("exp", d.exponential, q0, i1)?;
    if !cokernel_free(d.delta, rd, i0, d.delta_split) {
        return Err(KTheoryError::Underdetermined("coker δ may have torsion".into()));
    }
    if !cokernel_free(d.exponential, re, i1, d.exponential_split) {
        return Err(KTheoryError::Underdetermined("coker exp may have torsion".into()));
    }
    // 0 → coker δ → K0(A) → ker exp → 0 and 0 → coker exp → K1(A) → ker δ → 0
    let k0 = (i0 - rd) + (q0 - re);
    let k1 = (i1 - re) + (q1 - rd);
    Ok(SixTermSolution {
        middle: KPair { k0: FreeAbelianGroup::new(k0), k1: FreeAbelianGroup::new(k1) },
        delta_image_rank: rd,
        exponential_image_rank: re,
    })
}
