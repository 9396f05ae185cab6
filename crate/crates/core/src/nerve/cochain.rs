//! Cochains between nerve simplices, with their differential and composition.
//!
//! A cochain `η: F → G` of degree `r` between two `n`-simplices has a
//! component `η(I) ∈ hom^{r−p}(F(X_{i₀}), G(X_{i_p}))` for each sequence
//! with `p ≥ 1` edges. With the convolution
//!
//! ```text
//! (f ⋆ g)(I) = Σ_{0<j<p} (−1)^{|g|(p−j) + j(p−1) + 1} f(I≥j) ∘ g(I≤j)
//! ```
//!
//! the differential and composition are
//!
//! ```text
//! d_FG η = d η + (−1)^r Σ_{0<l<p} (−1)^l η(I∖i_l) + G ⋆ η − (−1)^r η ⋆ F
//! η ∘ φ  = η ⋆ φ
//! ```
//!
//! where a simplex is read as a cochain of degree 1. The curvature
//! `d α + α ⋆ α` of a simplex is its residual, so simplices are exactly
//! the Maurer-Cartan elements of this algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::{delete, edges, prefix, sequences, suffix, NerveError, NerveSimplex, Seq};
use crate::dgcat::{sign, DgCategory, Morphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveCochain {
    pub degree: i32,
    pub source: Arc<NerveSimplex>,
    pub target: Arc<NerveSimplex>,
    comps: BTreeMap<Seq, Morphism>,
}

impl NerveCochain {
    pub fn zero(c: &DgCategory, source: Arc<NerveSimplex>, target: Arc<NerveSimplex>, degree: i32) -> Self {
        assert_eq!(source.n, target.n, "cochains join simplices of equal dimension");
        let comps = sequences(source.n)
            .into_iter()
            .map(|s| {
                let (x, y, d) = shape(&source, &target, s, degree);
                (s, c.zero(x, y, d))
            })
            .collect();
        Self {
            degree,
            source,
            target,
            comps,
        }
    }

    pub fn n(&self) -> usize {
        self.source.n
    }

    pub fn component(&self, s: Seq) -> &Morphism {
        &self.comps[&s]
    }

    pub fn set_component(&mut self, s: Seq, m: Morphism) {
        let (x, y, d) = shape(&self.source, &self.target, s, self.degree);
        assert_eq!((m.source, m.target, m.degree), (x, y, d), "component shape");
        self.comps.insert(s, m);
    }

    pub fn components(&self) -> impl Iterator<Item = (Seq, &Morphism)> {
        self.comps.iter().map(|(s, m)| (*s, m))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Morphism::is_zero)
    }

    /// `self + sign · other`.
    pub fn add_signed(&self, sign: i32, other: &NerveCochain) -> NerveCochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, m) in out.comps.iter_mut() {
            m.add_signed(sign, &other.comps[s]);
        }
        out
    }

    /// A simplex as a degree 1 endo-cochain of itself.
    pub fn from_simplex(sigma: &Arc<NerveSimplex>) -> Self {
        Self {
            degree: 1,
            source: sigma.clone(),
            target: sigma.clone(),
            comps: sequences(sigma.n).into_iter().map(|s| (s, sigma.cell(s).clone())).collect(),
        }
    }
}

fn shape(f: &NerveSimplex, g: &NerveSimplex, s: Seq, degree: i32) -> (usize, usize, i32) {
    let vs = super::vertices(s);
    (f.objects[vs[0]], g.objects[*vs.last().unwrap()], degree - edges(s) as i32)
}

/// Sign of the `j`-th convolution term, or its Koszul-less variant.
fn star_sign(g_degree: i32, j: usize, p: usize, koszul: bool) -> i32 {
    let k = if koszul { g_degree * (p - j) as i32 } else { 0 };
    sign(k + (j * (p - 1)) as i32 + 1)
}

/// `out += sign · (f ⋆ g)(s)`.
#[allow(clippy::too_many_arguments)]
fn add_star<'a>(
    c: &DgCategory,
    out: &mut Morphism,
    s: Seq,
    overall: i32,
    f: impl Fn(Seq) -> &'a Morphism,
    g: impl Fn(Seq) -> &'a Morphism,
    g_degree: i32,
    koszul: bool,
) {
    let p = edges(s);
    for j in 1..p {
        let sg = overall * star_sign(g_degree, j, p, koszul);
        c.compose_into(out, sg, f(suffix(s, j)), g(prefix(s, j)));
    }
}

/// `f ⋆ g` for cochains `g: F → G`, `f: G → H`.
pub fn star_product(c: &DgCategory, f: &NerveCochain, g: &NerveCochain) -> Result<NerveCochain, NerveError> {
    star_with(c, f, g, true)
}

fn star_with(c: &DgCategory, f: &NerveCochain, g: &NerveCochain, koszul: bool) -> Result<NerveCochain, NerveError> {
    if f.source != g.target {
        return Err(NerveError::Structure("composable cochains must share the middle simplex".into()));
    }
    let mut out = NerveCochain::zero(c, g.source.clone(), f.target.clone(), f.degree + g.degree);
    for (s, m) in out.comps.iter_mut() {
        add_star(c, m, *s, 1, |t| &f.comps[&t], |t| &g.comps[&t], g.degree, koszul);
    }
    Ok(out)
}

/// `η ∘ φ` for `φ: F → G` and `η: G → H`.
pub fn cochain_compose(c: &DgCategory, eta: &NerveCochain, phi: &NerveCochain) -> Result<NerveCochain, NerveError> {
    star_product(c, eta, phi)
}

/// Composition with the Koszul sign dropped; only for mutation tests.
pub fn cochain_compose_mutated(c: &DgCategory, eta: &NerveCochain, phi: &NerveCochain) -> Result<NerveCochain, NerveError> {
    star_with(c, eta, phi, false)
}

/// `d_FG η`.
pub fn cochain_differential(c: &DgCategory, eta: &NerveCochain) -> NerveCochain {
    differential_with(c, eta, true)
}

/// The differential built on the Koszul-less convolution; only for mutation tests.
pub fn cochain_differential_mutated(c: &DgCategory, eta: &NerveCochain) -> NerveCochain {
    differential_with(c, eta, false)
}

fn differential_with(c: &DgCategory, eta: &NerveCochain, koszul: bool) -> NerveCochain {
    let r = eta.degree;
    let (f, g) = (&eta.source, &eta.target);
    let mut out = NerveCochain::zero(c, f.clone(), g.clone(), r + 1);
    for (&s, m) in out.comps.iter_mut() {
        let p = edges(s);
        m.add_assign(&c.d(&eta.comps[&s]));
        for l in 1..p {
            m.add_signed(sign(r + l as i32), &eta.comps[&delete(s, l)]);
        }
        add_star(c, m, s, 1, |t| g.cell(t), |t| &eta.comps[&t], r, koszul);
        add_star(c, m, s, -sign(r), |t| &eta.comps[&t], |t| f.cell(t), 1, koszul);
    }
    out
}

/// `d α + α ⋆ α` for a simplex read as a cochain (with zero twist).
pub fn curvature_cochain(c: &DgCategory, sigma: &Arc<NerveSimplex>) -> NerveCochain {
    let alpha = NerveCochain::from_simplex(sigma);
    let mut out = NerveCochain::zero(c, sigma.clone(), sigma.clone(), 2);
    for (&s, m) in out.comps.iter_mut() {
        let p = edges(s);
        m.add_assign(&c.d(&alpha.comps[&s]));
        for l in 1..p {
            m.add_signed(sign(1 + l as i32), &alpha.comps[&delete(s, l)]);
        }
        add_star(c, m, s, 1, |t| &alpha.comps[&t], |t| &alpha.comps[&t], 1, true);
    }
    out
}

pub fn random_cochain<R: Rng + ?Sized>(
    rng: &mut R,
    c: &DgCategory,
    source: Arc<NerveSimplex>,
    target: Arc<NerveSimplex>,
    degree: i32,
) -> NerveCochain {
    let mut out = NerveCochain::zero(c, source, target, degree);
    for m in out.comps.values_mut() {
        *m = c.random_morphism(rng, m.source, m.target, m.degree);
    }
    out
}
