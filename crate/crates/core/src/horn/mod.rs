//! Horns of nerve simplices and explicit fillers.
//!
//! A horn `Λᵏₙ` is an `n`-simplex with the face `∂_k = (0, …, k̂, …, n)` and
//! the top cell `(0, …, n)` removed. Filling solves for those two cells.
//!
//! Outer horns `k = 0`, with `α = α(0,1)` and an equivalence witness
//! `(a, g, h)`:
//!
//! ```text
//! d α̂₁ = U                  U = RHS(1, …, n)
//! d α̂₀ = α̂₁ ∘ α + V         V = RHS(0, …, n) without its α̂₁ ∘ α term
//! α̂₁ = −V a + (−1)ⁿ U h
//! α̂₀ = (−1)ⁿ (α̂₁ h α − α̂₁ α g − V g)
//! ```
//!
//! Inner horns `0 < k = a < n`, with `τ_a = a`:
//!
//! ```text
//! d α̂_a = U                   U = RHS(0, …, â, …, n)
//! d α̂₀ = (−1)^{τ_a} α̂_a + V   V = RHS(0, …, n) without its α̂_a term
//! α̂_a = −(−1)^{τ_a} V,  α̂₀ = 0
//! ```
//!
//! Outer horns `k = n` are filled as `k = 0` horns of the opposite category.

mod lift;
mod opposite;
mod sampler;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::dgcat::{find_equivalence_witness, DgCategory, DgError, EquivalenceWitness, Morphism};
use crate::nerve::{
    format_seq, full_seq, rhs_excluding, sequences, seq_of, validate_simplex, NerveError, NerveSimplex,
    SignPattern, SimplexViolation, TauRule,
};
use crate::rings::{RingElement, SquareZeroRing};
use crate::sample::small_ideal_element;

pub use lift::{lift_filler, lift_from, Lift, LiftCorrection};
pub use opposite::{opposite_filler, opposite_horn, opposite_simplex, reflect};
pub use sampler::{check_gp, GpFailure, GpReport, Sampler};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HornError {
    #[error("incompatible horn: {}", .0.join("; "))]
    IncompatibleHorn(Vec<String>),
    #[error("cannot fill outer horn: edge ({edge}) is not an equivalence")]
    CannotFillOuterHorn { edge: String },
    #[error("filler does not solve the horn modulo the ideal: {0}")]
    InvalidReduction(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Dg(#[from] DgError),
}

/// `(0, …, k̂, …, n)`.
pub fn face_seq(n: usize, k: usize) -> u32 {
    full_seq(n) & !(1 << k)
}

/// Sign `(−1)^{τ_a}` of the inner horn system.
pub fn tau_sign(a: usize, n: usize) -> i32 {
    TauRule::CALIBRATED.sign(a, n)
}

/// A simplex with exactly the `k`-th face and the top cell absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornData {
    pub k: usize,
    pub simplex: NerveSimplex,
}

impl HornData {
    pub fn new(simplex: NerveSimplex, k: usize) -> Result<Self, HornError> {
        let n = simplex.n;
        if n < 2 || k > n {
            return Err(HornError::Domain(format!("no horn Λ^{k}_{n}: need n ≥ 2 and 0 ≤ k ≤ n")));
        }
        let missing = [face_seq(n, k), full_seq(n)];
        let mut problems = Vec::new();
        for s in sequences(n) {
            let present = simplex.get(s).is_some();
            if missing.contains(&s) && present {
                problems.push(format!("cell ({}) must be absent", format_seq(s)));
            } else if !missing.contains(&s) && !present {
                problems.push(format!("cell ({}) is missing", format_seq(s)));
            }
        }
        if !problems.is_empty() {
            return Err(HornError::IncompatibleHorn(problems));
        }
        Ok(Self { k, simplex })
    }

    pub fn n(&self) -> usize {
        self.simplex.n
    }

    pub fn is_inner(&self) -> bool {
        0 < self.k && self.k < self.n()
    }

    /// `[face_k, top]`.
    pub fn missing(&self) -> [u32; 2] {
        [face_seq(self.n(), self.k), full_seq(self.n())]
    }

    /// The edge whose witness an outer filler consumes.
    pub fn outer_edge(&self) -> Option<u32> {
        match self.k {
            0 => Some(seq_of(&[0, 1])),
            k if k == self.n() => Some(seq_of(&[k - 1, k])),
            _ => None,
        }
    }

    pub fn reduce(&self) -> HornData {
        HornData {
            k: self.k,
            simplex: self.simplex.reduce(),
        }
    }
}

/// Deletes the `k`-th face and the top cell.
pub fn extract_horn(sigma: &NerveSimplex, k: usize) -> Result<HornData, HornError> {
    let mut s = sigma.clone();
    let n = sigma.n;
    if n < 2 || k > n {
        return Err(HornError::Domain(format!("no horn Λ^{k}_{n}: need n ≥ 2 and 0 ≤ k ≤ n")));
    }
    s.remove_cell(face_seq(n, k));
    s.remove_cell(full_seq(n));
    HornData::new(s, k)
}

/// Shape and condition checks on every present cell.
pub fn horn_violations(c: &DgCategory, h: &HornData) -> Vec<SimplexViolation> {
    let missing = h.missing();
    validate_partial(c, &h.simplex, &missing)
}

fn validate_partial(c: &DgCategory, s: &NerveSimplex, skip: &[u32]) -> Vec<SimplexViolation> {
    let mut probe = s.clone();
    for &m in skip {
        let (x, y, d) = s.cell_shape(m);
        probe.set_cell(m, c.zero(x, y, d));
    }
    validate_simplex(c, &probe)
        .into_iter()
        .filter(|v| !skip.contains(&v.sequence))
        .collect()
}

/// `Err(IncompatibleHorn)` unless every present cell satisfies the condition.
pub fn check_compatibility(c: &DgCategory, h: &HornData) -> Result<(), HornError> {
    let v = horn_violations(c, h);
    if v.is_empty() {
        Ok(())
    } else {
        Err(HornError::IncompatibleHorn(v.iter().map(ToString::to_string).collect()))
    }
}

/// The right-hand sides `U` and `V` of a horn system.
///
/// For `k = n` they are those of the reflected horn in the opposite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub k: usize,
    pub u: Morphism,
    pub v: Morphism,
}

impl Obstruction {
    /// `d U = 0` together with `d V = −U α` (outer) or `(−1)^{τ_a} U + d V = 0` (inner).
    pub fn verify(&self, c: &DgCategory, h: &HornData) -> bool {
        if h.k == h.n() {
            let op = c.opposite();
            return self.verify(&op, &opposite_horn(h));
        }
        if !c.d(&self.u).is_zero() {
            return false;
        }
        let dv = c.d(&self.v);
        if h.k == 0 {
            let alpha = h.simplex.edge(0, 1);
            dv == -&c.compose(&self.u, alpha)
        } else {
            (&dv + &self.u.signed(tau_sign(h.k, h.n()))).is_zero()
        }
    }
}

pub fn compute_obstruction(c: &DgCategory, h: &HornData) -> Result<Obstruction, HornError> {
    check_compatibility(c, h)?;
    obstruction_unchecked(c, h)
}

fn obstruction_unchecked(c: &DgCategory, h: &HornData) -> Result<Obstruction, HornError> {
    let n = h.n();
    if h.k == n {
        let op = c.opposite();
        return obstruction_unchecked(&op, &opposite_horn(h)).map(|ob| Obstruction { k: n, ..ob });
    }
    let face = face_seq(n, h.k);
    let pattern = SignPattern::CALIBRATED;
    Ok(Obstruction {
        k: h.k,
        u: rhs_excluding(c, &h.simplex, face, pattern, None)?,
        v: rhs_excluding(c, &h.simplex, full_seq(n), pattern, Some(face))?,
    })
}

/// The two cells completing a horn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filler {
    pub n: usize,
    pub k: usize,
    pub cells: BTreeMap<u32, Morphism>,
}

impl Filler {
    pub fn new(n: usize, k: usize, face: Morphism, top: Morphism) -> Self {
        Self {
            n,
            k,
            cells: BTreeMap::from([(face_seq(n, k), face), (full_seq(n), top)]),
        }
    }

    /// `α̂₀`, the top cell.
    pub fn top(&self) -> &Morphism {
        &self.cells[&full_seq(self.n)]
    }

    /// `α̂₁` (k = 0) or `α̂_a`, the missing face.
    pub fn face(&self) -> &Morphism {
        &self.cells[&face_seq(self.n, self.k)]
    }

    pub fn complete(&self, h: &HornData) -> NerveSimplex {
        let mut s = h.simplex.clone();
        for (q, m) in &self.cells {
            s.set_cell(*q, m.clone());
        }
        s
    }

    pub fn map_cells(&self, f: impl Fn(&Morphism) -> Morphism) -> Filler {
        Filler {
            n: self.n,
            k: self.k,
            cells: self.cells.iter().map(|(s, m)| (*s, f(m))).collect(),
        }
    }

    pub fn reduce(&self) -> Filler {
        self.map_cells(|m| m.map_coords(RingElement::reduce))
    }

    /// Adds small random ideal elements to every coordinate.
    pub fn perturb_ideal<R: Rng + ?Sized>(&self, rng: &mut R, ring: SquareZeroRing) -> Filler {
        let mut out = self.clone();
        for m in out.cells.values_mut() {
            for v in m.coords.iter_mut() {
                *v = &*v + &small_ideal_element(rng, ring);
            }
        }
        out
    }
}

impl fmt::Display for Filler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, m) in &self.cells {
            writeln!(f, "({}): {:?}", format_seq(*s), m.coords.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Fills any horn: inner, `k = 0` or `k = n`.
pub fn fill(c: &DgCategory, h: &HornData) -> Result<Filler, HornError> {
    match h.k {
        0 => fill_outer_zero(c, h),
        k if k == h.n() => fill_outer_n(c, h),
        _ => fill_inner(c, h),
    }
}

/// `α̂_a = −(−1)^{τ_a} V`, `α̂₀ = 0`. Never consults equivalence witnesses.
pub fn fill_inner(c: &DgCategory, h: &HornData) -> Result<Filler, HornError> {
    let n = h.n();
    let (x, y, d) = h.simplex.cell_shape(full_seq(n));
    fill_inner_with(c, h, &c.zero(x, y, d))
}

/// The inner filler with `α̂₀ = ξ` and `α̂_a = (−1)^{τ_a}(dξ − V)`.
pub fn fill_inner_with(c: &DgCategory, h: &HornData, xi: &Morphism) -> Result<Filler, HornError> {
    if !h.is_inner() {
        return Err(HornError::Domain(format!("Λ^{}_{} is not an inner horn", h.k, h.n())));
    }
    let ob = compute_obstruction(c, h)?;
    let face = (&c.d(xi) - &ob.v).signed(tau_sign(h.k, h.n()));
    Ok(Filler::new(h.n(), h.k, face, xi.clone()))
}

fn witness_for(c: &DgCategory, h: &HornData, edge: u32) -> Result<EquivalenceWitness, HornError> {
    find_equivalence_witness(c, h.simplex.cell(edge)).map_err(|e| match e {
        DgError::NotEquivalence | DgError::Precondition(_) => HornError::CannotFillOuterHorn {
            edge: format_seq(edge),
        },
        other => other.into(),
    })
}

/// Outer filler for `k = 0` from a witness of `α(0,1)`.
pub fn fill_outer_zero(c: &DgCategory, h: &HornData) -> Result<Filler, HornError> {
    if h.k != 0 {
        return Err(HornError::Domain(format!("expected k = 0, got k = {}", h.k)));
    }
    let ob = compute_obstruction(c, h)?;
    let w = witness_for(c, h, seq_of(&[0, 1]))?;
    let (face, top) = outer_solution(c, h.n(), h.simplex.edge(0, 1), &w, &ob.u, &ob.v);
    Ok(Filler::new(h.n(), 0, face, top))
}

/// `(x₁, x₀)` with `x₁ = −V a + (−1)ⁿ U h`, `x₀ = (−1)ⁿ(x₁ h α − x₁ α g − V g)`.
fn outer_solution(
    c: &DgCategory,
    n: usize,
    alpha: &Morphism,
    w: &EquivalenceWitness,
    u: &Morphism,
    v: &Morphism,
) -> (Morphism, Morphism) {
    let s = crate::dgcat::sign(n as i32);
    let mut x1 = c.compose(v, &w.a).signed(-1);
    c.compose_into(&mut x1, s, u, &w.h);
    let x1_alpha = c.compose(&x1, alpha);
    let mut x0 = c.compose(&c.compose(&x1, &w.h), alpha);
    x0.sub_assign(&c.compose(&x1_alpha, &w.g));
    x0.sub_assign(&c.compose(v, &w.g));
    (x1, x0.signed(s))
}

/// Outer filler for `k = n`, through the opposite category.
pub fn fill_outer_n(c: &DgCategory, h: &HornData) -> Result<Filler, HornError> {
    if h.k != h.n() {
        return Err(HornError::Domain(format!("expected k = n = {}, got k = {}", h.n(), h.k)));
    }
    check_compatibility(c, h)?;
    let op = c.opposite();
    let filled = fill_outer_zero(&op, &opposite_horn(h)).map_err(|e| match e {
        HornError::CannotFillOuterHorn { .. } => HornError::CannotFillOuterHorn {
            edge: format_seq(seq_of(&[h.n() - 1, h.n()])),
        },
        other => other,
    })?;
    Ok(opposite_filler(&filled))
}
