//! Maurer-Cartan elements and twisted dg-categories.
//!
//! An MC element on `E` is `η ∈ hom¹(E, E)` with `d(η) + η∘η = 0`. Twisting
//! replaces the differential on `hom((E, η), (F, ζ))` by
//!
//! ```text
//! d_ζη(f) = d(f) + ζ∘f − (−1)^{|f|} f∘η
//! ```
//!
//! and keeps composition and units.

use std::collections::BTreeMap;

use rand::Rng;
use thiserror::Error;

use crate::dgcat::{sign, CompEntry, DgCategory, DgError, Morphism};
use crate::glin::{solve_linear, GradedMap, Matrix};
use crate::rings::{RingElement, SquareZeroRing};
use crate::sample::{small_integer, small_rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error("{0} is not a Maurer-Cartan element")]
    InvalidMCObject(String),
    #[error(transparent)]
    Dg(#[from] DgError),
}

/// A Maurer-Cartan object `(E, η)` with a display label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCElement {
    pub label: String,
    pub eta: Morphism,
}

impl MCElement {
    pub fn new(label: impl Into<String>, eta: Morphism) -> Self {
        Self { label: label.into(), eta }
    }

    pub fn zero(c: &DgCategory, x: usize) -> Self {
        Self::new(c.label(x), c.zero(x, x, 1))
    }

    pub fn object(&self) -> usize {
        self.eta.source
    }
}

/// `P ⊗ B`: same bases, structure constants coerced into `B`.
pub fn tensor_with_ring(p: &DgCategory, ring: SquareZeroRing) -> DgCategory {
    assert_eq!(p.ring(), SquareZeroRing::RATIONALS, "base change starts over the rationals");
    p.map_scalars(ring, |x| ring.coerce(x))
}

/// `d(η) + η∘η`.
pub fn curvature(c: &DgCategory, eta: &Morphism) -> Morphism {
    let mut f = c.d(eta);
    c.compose_into(&mut f, 1, eta, eta);
    f
}

pub fn check_mc(c: &DgCategory, eta: &Morphism) -> Result<bool, DgError> {
    if eta.degree != 1 || eta.source != eta.target {
        return Err(DgError::Precondition(format!(
            "MC candidates are degree 1 endomorphisms, got {} -> {} in degree {}",
            c.label(eta.source),
            c.label(eta.target),
            eta.degree
        )));
    }
    Ok(curvature(c, eta).is_zero())
}

/// `MC(P ⊗ B)` restricted to finitely many MC objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedDgCategory {
    pub base: DgCategory,
    pub mc_objects: Vec<MCElement>,
    pub category: DgCategory,
}

/// Twists after checking every MC equation.
pub fn twist(base: &DgCategory, mc_objects: Vec<MCElement>) -> Result<TwistedDgCategory, McError> {
    for m in &mc_objects {
        if !check_mc(base, &m.eta)? {
            return Err(McError::InvalidMCObject(m.label.clone()));
        }
    }
    twist_unchecked(base, mc_objects)
}

/// Twists without checking the MC equations; the result may fail `d² = 0`.
pub fn twist_unchecked(base: &DgCategory, mc_objects: Vec<MCElement>) -> Result<TwistedDgCategory, McError> {
    let ring = base.ring();
    let n = mc_objects.len();
    let obj: Vec<usize> = mc_objects.iter().map(MCElement::object).collect();
    for m in &mc_objects {
        if m.eta.degree != 1 || m.eta.source != m.eta.target || m.eta.coords.len() != base.dim(m.object(), m.object(), 1) {
            return Err(DgError::Precondition(format!("{} does not carry a degree 1 endomorphism", m.label)).into());
        }
    }
    let homs: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| base.hom(obj[i], obj[j]).clone()).collect()).collect();
    let mut diff = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let (x, y) = (obj[i], obj[j]);
            let (eta, zeta) = (&mc_objects[i].eta, &mc_objects[j].eta);
            let mut dm = GradedMap::zero(ring, 1, homs[i][j].clone(), homs[i][j].clone());
            for (p, dim) in homs[i][j].iter() {
                let cols: Vec<_> = (0..dim)
                    .map(|k| {
                        let f = base.basis(x, y, p, k);
                        let mut out = base.d(&f);
                        base.compose_into(&mut out, 1, zeta, &f);
                        base.compose_into(&mut out, -sign(p), &f, eta);
                        out.coords
                    })
                    .collect();
                dm.set_block(p, Matrix::from_columns(ring, base.dim(x, y, p + 1), &cols))
                    .map_err(DgError::from)?;
            }
            row.push(dm);
        }
        diff.push(row);
    }
    let mut comp: BTreeMap<_, Vec<CompEntry>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for ((x, y, z, q, p), t) in base.composition() {
                    if (x, y, z) == (obj[i], obj[j], obj[l]) {
                        comp.insert((i, j, l, q, p), t.entries().collect());
                    }
                }
            }
        }
    }
    let units = obj.iter().map(|&x| base.unit_coords(x).to_vec()).collect();
    let labels = mc_objects.iter().map(|m| m.label.clone()).collect();
    let category = DgCategory::new(ring, labels, homs, diff, comp, units)?;
    Ok(TwistedDgCategory {
        base: base.clone(),
        mc_objects,
        category,
    })
}

/// Two-sided inverse of a degree 0 endomorphism, if any.
pub fn invert_endomorphism(c: &DgCategory, theta: &Morphism) -> Option<Morphism> {
    let x = theta.source;
    let dim = c.dim(x, x, 0);
    let cols: Vec<_> = (0..dim).map(|k| c.compose(theta, &c.basis(x, x, 0, k)).coords).collect();
    let left = Matrix::from_columns(c.ring(), dim, &cols);
    let u = solve_linear(&left, &c.unit(x).coords).ok()?;
    let inv = c.morphism(x, x, 0, u).ok()?;
    (c.compose(&inv, theta) == c.unit(x)).then_some(inv)
}

/// Gauge action `θ·η = θηθ⁻¹ − d(θ)θ⁻¹`.
pub fn gauge(c: &DgCategory, theta: &Morphism, theta_inv: &Morphism, eta: &Morphism) -> Morphism {
    let mut out = c.compose(&c.compose(theta, eta), theta_inv);
    c.compose_into(&mut out, -1, &c.d(theta), theta_inv);
    out
}

/// A random MC element on `x`: an ideal-valued cycle `Σ εᵢξᵢ` (when the
/// ideal is nonzero), moved by a random gauge transformation `θ = 1 + ν`.
pub fn random_mc_element<R: Rng + ?Sized>(rng: &mut R, c: &DgCategory, x: usize, label: impl Into<String>) -> MCElement {
    let ring = c.ring();
    let mut eta = c.zero(x, x, 1);
    for i in 0..ring.ideal_rank {
        let xi = c.random_closed(rng, x, x, 1);
        eta.add_assign(&xi.scale(&ring.epsilon(i)));
    }
    for _ in 0..8 {
        let mut theta = c.unit(x);
        for co in theta.coords.iter_mut() {
            if rng.gen_bool(0.5) {
                co.body += small_integer(rng);
            }
            for v in co.ideal.iter_mut() {
                *v += small_rational(rng);
            }
        }
        if let Some(inv) = invert_endomorphism(c, &theta) {
            eta = gauge(c, &theta, &inv, &eta);
            break;
        }
    }
    debug_assert!(check_mc(c, &eta).unwrap());
    MCElement::new(label, eta)
}

/// Adds `delta` to one coordinate of `η`.
pub fn mutate_coordinate(eta: &Morphism, index: usize, delta: &RingElement) -> Morphism {
    let mut out = eta.clone();
    out.coords[index] += delta;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{make_complex_category, random_complex_category, ChainComplex, Law};
    use crate::glin::GradedModule;
    use crate::sample::rng_from_seed;

    fn q() -> SquareZeroRing {
        SquareZeroRing::RATIONALS
    }

    /// ℚ in degrees 0, 1, 2 with zero differential.
    fn spread() -> DgCategory {
        let m = GradedModule::new([(0, 1), (1, 1), (2, 1)]);
        let d = GradedMap::zero(q(), 1, m.clone(), m);
        make_complex_category(&[ChainComplex::new(d).unwrap()]).unwrap()
    }

    #[test]
    fn trivial_base_change() {
        let p = random_complex_category(4, 2, 6);
        assert_eq!(tensor_with_ring(&p, q()), p);
        let b = tensor_with_ring(&p, SquareZeroRing::new(1));
        assert!(b.check_axioms().is_empty());
        assert_eq!(b.reduce(), p);
    }

    #[test]
    fn zero_is_mc() {
        let c = spread();
        assert!(check_mc(&c, &c.zero(0, 0, 1)).unwrap());
        assert!(check_mc(&c, &c.zero(0, 0, 0)).is_err());
    }

    #[test]
    fn closed_with_nonzero_square_is_not_mc() {
        // η = e₁₀ + e₂₁ (degree 0 → 1 → 2): closed since d = 0, η² = e₂₀ ≠ 0.
        let c = spread();
        let one = q().one();
        let eta = c.morphism(0, 0, 1, vec![one.clone(), one]).unwrap();
        assert!(c.d(&eta).is_zero());
        assert!(!check_mc(&c, &eta).unwrap());
    }

    #[test]
    fn ideal_valued_cycles_are_mc() {
        let b = tensor_with_ring(&spread(), SquareZeroRing::new(1));
        let one = b.ring().one();
        let xi = b.morphism(0, 0, 1, vec![one.clone(), one]).unwrap();
        let eta = xi.scale(&b.ring().epsilon(0));
        assert!(check_mc(&b, &eta).unwrap());
        let t = twist(&b, vec![MCElement::new("E", eta)]).unwrap();
        assert!(t.category.check_axioms().is_empty());
    }

    #[test]
    fn zero_twist_is_the_base() {
        let c = random_complex_category(5, 2, 6);
        let objs = (0..c.num_objects()).map(|x| MCElement::zero(&c, x)).collect();
        assert_eq!(twist(&c, objs).unwrap().category, c);
    }

    #[test]
    fn nilpotent_twist_and_corruption() {
        let c = spread();
        let one = q().one();
        let eta = c.morphism(0, 0, 1, vec![one.clone(), q().zero()]).unwrap();
        assert!(check_mc(&c, &eta).unwrap());
        let t = twist(&c, vec![MCElement::new("E", eta.clone()), MCElement::new("E0", c.zero(0, 0, 1))]).unwrap();
        assert!(t.category.check_axioms().is_empty());
        let bad = mutate_coordinate(&eta, 1, &one);
        assert_eq!(
            twist(&c, vec![MCElement::new("E", bad.clone())]),
            Err(McError::InvalidMCObject("E".into()))
        );
        let broken = twist_unchecked(&c, vec![MCElement::new("E", bad)]).unwrap();
        let mut report = Vec::new();
        broken.category.check_differential(&mut report);
        assert!(report.iter().any(|v| v.law == Law::DSquared));
    }

    #[test]
    fn random_mc_elements_twist_correctly() {
        let mut rng = rng_from_seed(17);
        for m in 0..=2 {
            let b = tensor_with_ring(&random_complex_category(6 + m as u64, 2, 7), SquareZeroRing::new(m));
            for x in 0..b.num_objects() {
                let mc = random_mc_element(&mut rng, &b, x, "T");
                assert!(check_mc(&b, &mc.eta).unwrap());
                assert!(check_mc(&b.reduce(), &mc.eta.map_coords(RingElement::reduce)).unwrap());
                let objs = vec![mc, MCElement::zero(&b, x)];
                let t = twist(&b, objs).unwrap();
                assert!(t.category.check_axioms().is_empty());
            }
        }
    }
}
