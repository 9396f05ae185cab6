//! Sign patterns for the simplex condition, and their calibration.
//!
//! A candidate pattern assigns
//!
//! ```text
//! face sign        (−1)^{a₁·l + a₂·p + a₀}
//! composition sign (−1)^{b₁·j + b₂·p + b₃·p·j + b₀}
//! ```
//!
//! with `a₀`, `b₀` forced by the normalization `d α₀₁₂ = α₁₂α₀₁ − α₀₂`.
//! Calibration runs the condition in the free dg-category on the cells of a
//! simplex, where `d² = 0` holds iff the pattern is consistent.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{delete, edges, full_seq, prefix, sequences, suffix, Seq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    pub face_l: bool,
    pub face_p: bool,
    pub comp_j: bool,
    pub comp_p: bool,
    pub comp_pj: bool,
}

fn parity(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SignPattern {
    /// The unique consistent pattern with a `p`-independent face sign:
    /// faces `(−1)^l`, compositions `(−1)^{p(j+1)}`.
    pub const CALIBRATED: SignPattern = SignPattern {
        face_l: true,
        face_p: false,
        comp_j: false,
        comp_p: true,
        comp_pj: true,
    };

    pub fn face_sign(&self, l: usize, p: usize) -> i32 {
        let (a1, a2) = (self.face_l as usize, self.face_p as usize);
        let a0 = (1 + a1) % 2;
        parity(a1 * l + a2 * p + a0)
    }

    pub fn comp_sign(&self, j: usize, p: usize) -> i32 {
        let (b1, b2, b3) = (self.comp_j as usize, self.comp_p as usize, self.comp_pj as usize);
        parity(b1 * j + b2 * p + b3 * p * j + b1)
    }

    /// The 16 candidates with a face sign independent of `p`.
    pub fn candidates() -> Vec<SignPattern> {
        Self::all().into_iter().filter(|s| !s.face_p).collect()
    }

    /// All 32 normalized patterns.
    pub fn all() -> Vec<SignPattern> {
        (0..32u32)
            .map(|b| SignPattern {
                face_l: b & 1 != 0,
                face_p: b & 2 != 0,
                comp_j: b & 4 != 0,
                comp_p: b & 8 != 0,
                comp_pj: b & 16 != 0,
            })
            .collect()
    }

    /// `d α₀₁₂ = α₁₂α₀₁ − α₀₂`.
    pub fn reproduces_two_simplex(&self) -> bool {
        self.comp_sign(1, 2) == 1 && self.face_sign(1, 2) == -1
    }
}

/// Integer combination of words; a word `[g₁, …, g_m]` is `g₁ ∘ ⋯ ∘ g_m`.
type Poly = BTreeMap<Vec<Seq>, i64>;

fn add_term(poly: &mut Poly, word: Vec<Seq>, c: i64) {
    match poly.entry(word) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if c != 0 {
                v.insert(c);
            }
        }
    }
}

/// `d x_I` in the free model.
fn d_generator(s: Seq, pattern: SignPattern) -> Poly {
    let p = edges(s);
    let mut out = Poly::new();
    for j in 1..p {
        add_term(&mut out, vec![suffix(s, j), prefix(s, j)], pattern.comp_sign(j, p) as i64);
    }
    for l in 1..p {
        add_term(&mut out, vec![delete(s, l)], pattern.face_sign(l, p) as i64);
    }
    out
}

/// Extends `d` as a derivation: `d(g∘f) = d(g)∘f + (−1)^{|g|} g∘d(f)`,
/// with `|x_I| = 1 − p`.
fn d_poly(poly: &Poly, pattern: SignPattern) -> Poly {
    let mut out = Poly::new();
    for (word, &c) in poly {
        let mut odd = false;
        for (k, &g) in word.iter().enumerate() {
            let sign = if odd { -1 } else { 1 };
            for (inner, ci) in d_generator(g, pattern) {
                let mut w = word[..k].to_vec();
                w.extend(inner);
                w.extend_from_slice(&word[k + 1..]);
                add_term(&mut out, w, sign * c * ci);
            }
            odd ^= edges(g).is_multiple_of(2);
        }
    }
    out
}

/// `d² x_I = 0` for every sequence on at most `max_n + 1` vertices.
pub fn free_model_check(pattern: SignPattern, max_n: usize) -> bool {
    sequences(max_n)
        .into_iter()
        .all(|s| d_poly(&d_generator(s, pattern), pattern).is_empty())
}

/// Candidates (among [`SignPattern::candidates`]) passing the normalization
/// and `d² = 0` through dimension `max_n`.
pub fn calibrate_signs(max_n: usize) -> Vec<SignPattern> {
    SignPattern::candidates()
        .into_iter()
        .filter(|s| s.reproduces_two_simplex() && free_model_check(*s, max_n))
        .collect()
}

/// Readings of the exponent `τ_a` in the inner-horn identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TauRule {
    APlusOne,
    A,
    APlusN,
    APlusNPlusOne,
}

impl TauRule {
    pub const ALL: [TauRule; 4] = [TauRule::APlusOne, TauRule::A, TauRule::APlusN, TauRule::APlusNPlusOne];
    pub const CALIBRATED: TauRule = TauRule::A;

    pub fn value(&self, a: usize, n: usize) -> usize {
        match self {
            TauRule::APlusOne => a + 1,
            TauRule::A => a,
            TauRule::APlusN => a + n,
            TauRule::APlusNPlusOne => a + n + 1,
        }
    }

    pub fn sign(&self, a: usize, n: usize) -> i32 {
        parity(self.value(a, n))
    }
}

/// Rules for which `(−1)^{τ_a} U + d(V) = 0` holds in the free model for
/// every inner horn with `n ≤ max_n`, where `U = d α̂_a` and `V` is the
/// right-hand side at the top cell without the face-`a` term.
pub fn calibrate_tau(pattern: SignPattern, max_n: usize) -> Vec<TauRule> {
    TauRule::ALL
        .into_iter()
        .filter(|rule| {
            (2..=max_n).all(|n| {
                (1..n).all(|a| {
                    let top = full_seq(n);
                    let face = delete(top, a);
                    let u = d_generator(face, pattern);
                    let mut v = d_generator(top, pattern);
                    add_term(&mut v, vec![face], -(pattern.face_sign(a, n) as i64));
                    let mut total = d_poly(&v, pattern);
                    for (w, c) in u {
                        add_term(&mut total, w, rule.sign(a, n) as i64 * c);
                    }
                    total.is_empty()
                })
            })
        })
        .collect()
}
