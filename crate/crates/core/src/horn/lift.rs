//! Lifting fillers along a square-zero extension `B → B/I`.
//!
//! Given a horn over `B` and any coordinatewise lift `α̃` of a filler of its
//! reduction, the errors
//!
//! ```text
//! φ = d α̃_face − U
//! ψ = d α̃₀ − α̃₁ α − V              (k = 0)
//! ψ = d α̃₀ − (−1)^{τ_a} α̃_a − V    (0 < k = a < n)
//! ```
//!
//! lie in `I`, and the corrections
//!
//! ```text
//! ε₁ = −ψ a + (−1)ⁿ φ h,  ε₀ = (−1)ⁿ(ε₁ h α − ε₁ α g − ψ g)   (k = 0)
//! ε_a = −(−1)^{τ_a} ψ,    ε₀ = 0                             (0 < k = a < n)
//! ```
//!
//! give the filler `α̂ = α̃ − ε` over `B`. Since `I² = 0` only the residue of
//! the witness `(a, g, h)` enters, so it is computed over `B/I`.

use super::{
    check_compatibility, face_seq, obstruction_unchecked, opposite_filler, opposite_horn, outer_solution, tau_sign,
    witness_for, Filler, HornData, HornError,
};
use crate::dgcat::{DgCategory, EquivalenceWitness, Morphism};
use crate::nerve::{format_seq, full_seq, seq_of};
use crate::rings::RingElement;

/// The ideal-valued errors and the corrections applied to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCorrection {
    pub phi: Morphism,
    pub psi: Morphism,
    pub eps_face: Morphism,
    pub eps_top: Morphism,
}

impl LiftCorrection {
    /// `d φ = 0`, `d ψ = −φ α` or `−(−1)^{τ_a} φ`, `d ε_face = φ`,
    /// `d ε₀ = ε₁ α + ψ` or `(−1)^{τ_a} ε_a + ψ`.
    ///
    /// For `k = n` the identities are those of the reflected horn.
    pub fn verify(&self, c: &DgCategory, h: &HornData) -> bool {
        if h.k == h.n() {
            return self.verify(&c.opposite(), &opposite_horn(h));
        }
        let ideal = [&self.phi, &self.psi, &self.eps_face, &self.eps_top]
            .iter()
            .all(|m| m.in_ideal());
        let (dpsi_expected, deps0_expected) = if h.k == 0 {
            let alpha = h.simplex.edge(0, 1);
            (
                -&c.compose(&self.phi, alpha),
                &c.compose(&self.eps_face, alpha) + &self.psi,
            )
        } else {
            let t = tau_sign(h.k, h.n());
            (self.phi.signed(-t), &self.eps_face.signed(t) + &self.psi)
        };
        ideal
            && c.d(&self.phi).is_zero()
            && c.d(&self.psi) == dpsi_expected
            && c.d(&self.eps_face) == self.phi
            && c.d(&self.eps_top) == deps0_expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub filler: Filler,
    pub correction: LiftCorrection,
}

/// Lifts a filler of `h` mod `I` by zero-extending its coordinates.
pub fn lift_filler(c: &DgCategory, h: &HornData, reduced: &Filler) -> Result<Lift, HornError> {
    let ring = c.ring();
    let approx = reduced.map_cells(|m| m.map_coords(|v| ring.coerce(v)));
    lift_from(c, h, &approx)
}

/// Corrects an arbitrary lift `α̃` over `B` of a filler mod `I`.
pub fn lift_from(c: &DgCategory, h: &HornData, approx: &Filler) -> Result<Lift, HornError> {
    if (approx.n, approx.k) != (h.n(), h.k) {
        return Err(HornError::Domain(format!(
            "filler for Λ^{}_{} does not match horn Λ^{}_{}",
            approx.k,
            approx.n,
            h.k,
            h.n()
        )));
    }
    for (s, m) in &approx.cells {
        let expected = h.simplex.cell_shape(*s);
        if (m.source, m.target, m.degree) != expected || m.coords.len() != c.dim(expected.0, expected.1, expected.2) {
            return Err(HornError::Domain(format!("filler cell ({}) has the wrong shape", format_seq(*s))));
        }
    }
    check_compatibility(c, h)?;
    if h.k == h.n() {
        let op = c.opposite();
        let lifted = lift_from(&op, &opposite_horn(h), &opposite_filler(approx))?;
        return Ok(Lift {
            filler: opposite_filler(&lifted.filler),
            correction: lifted.correction,
        });
    }
    let n = h.n();
    let ob = obstruction_unchecked(c, h)?;
    let face = &approx.cells[&face_seq(n, h.k)];
    let top = &approx.cells[&full_seq(n)];
    let phi = &c.d(face) - &ob.u;
    let mut psi = &c.d(top) - &ob.v;
    if h.k == 0 {
        c.compose_into(&mut psi, -1, face, h.simplex.edge(0, 1));
    } else {
        psi.add_signed(-tau_sign(h.k, n), face);
    }
    for (name, m) in [("φ", &phi), ("ψ", &psi)] {
        if !m.in_ideal() {
            return Err(HornError::InvalidReduction(format!("{name} has a nonzero residue")));
        }
    }
    let (eps_face, eps_top) = if h.k == 0 {
        let w = residual_witness(c, h)?;
        outer_solution(c, n, h.simplex.edge(0, 1), &w, &phi, &psi)
    } else {
        let (x, y, d) = h.simplex.cell_shape(full_seq(n));
        (psi.signed(-tau_sign(h.k, n)), c.zero(x, y, d))
    };
    let filler = Filler::new(n, h.k, face - &eps_face, top - &eps_top);
    Ok(Lift {
        filler,
        correction: LiftCorrection {
            phi,
            psi,
            eps_face,
            eps_top,
        },
    })
}

/// A witness of `α(0,1)` mod `I`, zero-extended to `B`.
fn residual_witness(c: &DgCategory, h: &HornData) -> Result<EquivalenceWitness, HornError> {
    let w = witness_for(&c.reduce(), &h.reduce(), seq_of(&[0, 1]))?;
    let ring = c.ring();
    let up = |m: &Morphism| m.map_coords(|v: &RingElement| ring.coerce(v));
    Ok(EquivalenceWitness {
        a: up(&w.a),
        g: up(&w.g),
        h: up(&w.h),
    })
}
