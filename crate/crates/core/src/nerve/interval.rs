//! The interval dg-category on `0 < 1 < ⋯ < n`.

use std::collections::BTreeMap;

use super::{sequences, NerveError, NerveSimplex, MAX_DIMENSION};
use crate::dgcat::{CompEntry, DgCategory, Morphism};
use crate::glin::{GradedMap, GradedModule};
use crate::rings::SquareZeroRing;

/// Objects `0, …, n`; `hom(i, j)` is `ℚ·e_ij` in degree 0 for `i ≤ j` and
/// zero otherwise, with `e_jk ∘ e_ij = e_ik`, `e_ii = 1` and `d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalDg {
    pub n: usize,
}

impl IntervalDg {
    pub fn new(n: usize) -> Result<Self, NerveError> {
        if n > MAX_DIMENSION {
            return Err(NerveError::Dimension(n));
        }
        Ok(Self { n })
    }

    pub fn category(&self) -> DgCategory {
        let ring = SquareZeroRing::RATIONALS;
        let size = self.n + 1;
        let hom = |i: usize, j: usize| {
            if i <= j {
                GradedModule::new([(0, 1)])
            } else {
                GradedModule::zero()
            }
        };
        let homs: Vec<Vec<GradedModule>> = (0..size).map(|i| (0..size).map(|j| hom(i, j)).collect()).collect();
        let diff = homs
            .iter()
            .map(|row| row.iter().map(|m| GradedMap::zero(ring, 1, m.clone(), m.clone())).collect())
            .collect();
        let mut comp = BTreeMap::new();
        for i in 0..size {
            for j in i..size {
                for k in j..size {
                    let e = CompEntry {
                        left: 0,
                        right: 0,
                        out: 0,
                        coeff: ring.one(),
                    };
                    comp.insert((i, j, k, 0, 0), vec![e]);
                }
            }
        }
        let units = vec![vec![ring.one()]; size];
        DgCategory::new(ring, (0..size).map(|i| i.to_string()).collect(), homs, diff, comp, units)
            .expect("interval structure data")
    }

    /// `e_ij` for `i ≤ j`.
    pub fn generator(&self, c: &DgCategory, i: usize, j: usize) -> Result<Morphism, NerveError> {
        if i > j || j > self.n {
            return Err(NerveError::OutOfRange { index: j, n: self.n });
        }
        Ok(c.basis(i, j, 0, 0))
    }

    /// The `n`-simplex of the nerve of the interval itself: edges `e_ij`,
    /// higher cells zero.
    pub fn tautological_simplex(&self, c: &DgCategory) -> NerveSimplex {
        let mut s = NerveSimplex::new((0..=self.n).collect()).expect("dimension");
        for seq in sequences(self.n) {
            let (x, y, deg) = s.cell_shape(seq);
            let cell = if deg == 0 { c.basis(x, y, 0, 0) } else { c.zero(x, y, deg) };
            s.set_cell(seq, cell);
        }
        s
    }
}
