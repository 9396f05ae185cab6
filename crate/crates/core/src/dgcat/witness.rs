//! Homotopy equivalence witnesses `(a, g, h)` for closed degree 0 maps.

use std::cell::Cell;

use super::{DgCategory, DgError, Morphism};
use crate::glin::{solve_linear, Matrix};

thread_local! {
    static WITNESS_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`find_equivalence_witness`] calls on this thread since the last reset.
pub fn witness_calls() -> u64 {
    WITNESS_CALLS.with(Cell::get)
}

pub fn reset_witness_calls() {
    WITNESS_CALLS.with(|c| c.set(0));
}

/// For `α: X → Y`: `d(a) = 0`, `a∘α = 1 + d(g)`, `α∘a = 1 + d(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub a: Morphism,
    pub g: Morphism,
    pub h: Morphism,
}

impl EquivalenceWitness {
    /// Re-checks the three identities exactly.
    pub fn verify(&self, c: &DgCategory, alpha: &Morphism) -> bool {
        let (x, y) = (alpha.source, alpha.target);
        let shapes = (self.a.source, self.a.target, self.a.degree) == (y, x, 0)
            && (self.g.source, self.g.target, self.g.degree) == (x, x, -1)
            && (self.h.source, self.h.target, self.h.degree) == (y, y, -1);
        shapes
            && c.d(&self.a).is_zero()
            && c.compose(&self.a, alpha) == &c.unit(x) + &c.d(&self.g)
            && c.compose(alpha, &self.a) == &c.unit(y) + &c.d(&self.h)
    }
}

/// Matrix of `u ↦ L(u)` on basis vectors of `hom^deg(s, t)`.
fn matrix_of(c: &DgCategory, s: usize, t: usize, deg: i32, rows: usize, f: impl Fn(&Morphism) -> Morphism) -> Matrix {
    let cols: Vec<_> = (0..c.dim(s, t, deg)).map(|i| f(&c.basis(s, t, deg, i)).coords).collect();
    Matrix::from_columns(c.ring(), rows, &cols)
}

/// Solves for `(a, g, h)` in one linear system.
pub fn find_equivalence_witness(c: &DgCategory, alpha: &Morphism) -> Result<EquivalenceWitness, DgError> {
    WITNESS_CALLS.with(|n| n.set(n.get() + 1));
    if alpha.degree != 0 {
        return Err(DgError::Precondition(format!("witness requested for a map of degree {}", alpha.degree)));
    }
    if !c.d(alpha).is_zero() {
        return Err(DgError::Precondition("witness requested for a map that is not closed".into()));
    }
    let (x, y) = (alpha.source, alpha.target);
    let ring = c.ring();
    let (na, ng, nh) = (c.dim(y, x, 0), c.dim(x, x, -1), c.dim(y, y, -1));
    let (r1, r2, r3) = (c.dim(y, x, 1), c.dim(x, x, 0), c.dim(y, y, 0));

    let da = matrix_of(c, y, x, 0, r1, |u| c.d(u));
    let a_alpha = matrix_of(c, y, x, 0, r2, |u| c.compose(u, alpha));
    let alpha_a = matrix_of(c, y, x, 0, r3, |u| c.compose(alpha, u));
    let dg = matrix_of(c, x, x, -1, r2, |u| c.d(u));
    let dh = matrix_of(c, y, y, -1, r3, |u| c.d(u));

    let mut big = Matrix::zeros(ring, r1 + r2 + r3, na + ng + nh);
    let minus_one = ring.int(-1);
    let mut put = |m: &Matrix, r0: usize, c0: usize, scale: Option<&_>| {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = match scale {
                    Some(s) => m.get(i, j) * s,
                    None => m.get(i, j).clone(),
                };
                big.set(r0 + i, c0 + j, v);
            }
        }
    };
    put(&da, 0, 0, None);
    put(&a_alpha, r1, 0, None);
    put(&dg, r1, na, Some(&minus_one));
    put(&alpha_a, r1 + r2, 0, None);
    put(&dh, r1 + r2, na + ng, Some(&minus_one));

    let mut rhs = vec![ring.zero(); r1];
    rhs.extend(c.unit(x).coords);
    rhs.extend(c.unit(y).coords);
    let sol = solve_linear(&big, &rhs).map_err(|_| DgError::NotEquivalence)?;
    let witness = EquivalenceWitness {
        a: c.morphism(y, x, 0, sol[..na].to_vec())?,
        g: c.morphism(x, x, -1, sol[na..na + ng].to_vec())?,
        h: c.morphism(y, y, -1, sol[na + ng..].to_vec())?,
    };
    debug_assert!(witness.verify(c, alpha));
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{make_complex_category, random_complex_category, ChainComplex};
    use crate::glin::{GradedMap, GradedModule};
    use crate::rings::SquareZeroRing;
    use crate::sample::rng_from_seed;

    fn q() -> SquareZeroRing {
        SquareZeroRing::RATIONALS
    }

    #[test]
    fn identity_has_a_witness() {
        let c = random_complex_category(1, 2, 6);
        let w = find_equivalence_witness(&c, &c.unit(0)).unwrap();
        assert!(w.verify(&c, &c.unit(0)));
    }

    #[test]
    fn contractible_objects_are_equivalent() {
        // Both ends are the acyclic complex ℚ → ℚ, so even α = 0 is an equivalence.
        let m = GradedModule::new([(-1, 1), (0, 1)]);
        let mut d = GradedMap::zero(q(), 1, m.clone(), m);
        d.set_block(-1, crate::glin::Matrix::identity(q(), 1)).unwrap();
        let cone = ChainComplex::new(d).unwrap();
        let c = make_complex_category(&[cone.clone(), cone]).unwrap();
        let zero = c.zero(0, 1, 0);
        let w = find_equivalence_witness(&c, &zero).unwrap();
        assert!(w.verify(&c, &zero));
    }

    #[test]
    fn zero_map_with_cohomology_is_not_an_equivalence() {
        let p = ChainComplex::point(q(), 0, 1);
        let c = make_complex_category(&[p.clone(), p]).unwrap();
        assert_eq!(find_equivalence_witness(&c, &c.zero(0, 1, 0)), Err(DgError::NotEquivalence));
    }

    #[test]
    fn preconditions() {
        let c = random_complex_category(2, 2, 6);
        let mut rng = rng_from_seed(0);
        let f = c.random_morphism(&mut rng, 0, 1, 1);
        assert!(matches!(find_equivalence_witness(&c, &f), Err(DgError::Precondition(_))));
    }

    #[test]
    fn counter_counts() {
        let c = random_complex_category(3, 1, 3);
        reset_witness_calls();
        let _ = find_equivalence_witness(&c, &c.unit(0));
        let _ = find_equivalence_witness(&c, &c.unit(0));
        assert_eq!(witness_calls(), 2);
    }
}
