//! Transport of simplices, horns and fillers to the opposite category.
//!
//! Vertex `i` goes to `n − i`, and the cell on a reflected sequence with
//! `m` edges is rescaled by `(−1)^{(m−1)(m−2)/2}`. The transport is an
//! involution and preserves the simplex condition.

use super::{Filler, HornData};
use crate::dgcat::{DgCategory, Morphism};
use crate::nerve::{edges, seq_of, vertices, NerveSimplex, Seq};

/// The sequence `{n − i : i ∈ s}`.
pub fn reflect(s: Seq, n: usize) -> Seq {
    seq_of(&vertices(s).into_iter().rev().map(|v| n - v).collect::<Vec<_>>())
}

fn rescale(s: Seq) -> i32 {
    let m = edges(s);
    if ((m - 1) * m.saturating_sub(2) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn transport(s: Seq, m: &Morphism) -> Morphism {
    DgCategory::to_opposite(m).signed(rescale(s))
}

/// `σ^op` in the opposite category; partial simplices stay partial.
pub fn opposite_simplex(sigma: &NerveSimplex) -> NerveSimplex {
    let n = sigma.n;
    let mut out = NerveSimplex::new(sigma.objects.iter().rev().copied().collect()).expect("dimension");
    for (s, m) in sigma.cells() {
        out.set_cell(reflect(s, n), transport(s, m));
    }
    out
}

/// `Λᵏₙ ↦ Λⁿ⁻ᵏₙ`.
pub fn opposite_horn(h: &HornData) -> HornData {
    HornData {
        k: h.n() - h.k,
        simplex: opposite_simplex(&h.simplex),
    }
}

pub fn opposite_filler(f: &Filler) -> Filler {
    Filler {
        n: f.n,
        k: f.n - f.k,
        cells: f.cells.iter().map(|(s, m)| (reflect(*s, f.n), transport(*s, m))).collect(),
    }
}
