//! Full dg-categories of bounded complexes of free modules.
//!
//! `hom^p(E, F) = ∏ᵢ Hom(Eⁱ, F^{i+p})` with basis the elementary matrices,
//! ordered by source degree, then row, then column, and
//! `d(f) = d_F ∘ f − (−1)^{|f|} f ∘ d_E`.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::{sign, CompEntry, DgCategory, DgError};
use crate::glin::{compose_maps, GradedMap, GradedModule, Matrix};
use crate::rings::{RingElement, SquareZeroRing};
use crate::sample::{rng_from_seed, small_integer};

/// A bounded complex with cohomological grading (`d` raises degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    d: GradedMap,
}

impl ChainComplex {
    pub fn new(d: GradedMap) -> Result<Self, DgError> {
        if d.degree != 1 || d.source != d.target {
            return Err(DgError::InvalidComplex("differential must be a degree 1 endomorphism".into()));
        }
        let dd = compose_maps(&d, &d)?;
        if let Some((deg, _)) = dd.blocks().find(|(_, m)| !m.is_zero()) {
            return Err(DgError::InvalidComplex(format!("d^2 is nonzero on degree {deg}")));
        }
        Ok(Self { d })
    }

    /// A complex concentrated in a single degree.
    pub fn point(ring: SquareZeroRing, degree: i32, rank: usize) -> Self {
        let m = GradedModule::new([(degree, rank)]);
        Self {
            d: GradedMap::zero(ring, 1, m.clone(), m),
        }
    }

    pub fn module(&self) -> &GradedModule {
        &self.d.source
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    pub fn ring(&self) -> SquareZeroRing {
        self.d.ring
    }
}

/// The elementary-matrix basis of `hom^p(E, F)`.
#[derive(Debug, Clone)]
pub struct ComplexBasis {
    /// `(source degree i, row, column)` of each basis element.
    pub elements: Vec<(i32, usize, usize)>,
    index: HashMap<(i32, usize, usize), usize>,
}

impl ComplexBasis {
    pub fn new(source: &GradedModule, target: &GradedModule, p: i32) -> Self {
        let mut elements = Vec::new();
        for (i, cols) in source.iter() {
            for r in 0..target.dim(i + p) {
                for c in 0..cols {
                    elements.push((i, r, c));
                }
            }
        }
        let index = elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Self { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, e: (i32, usize, usize)) -> Option<usize> {
        self.index.get(&e).copied()
    }

    /// Coordinates to a graded map of degree `p`.
    pub fn to_map(
        &self,
        ring: SquareZeroRing,
        source: &GradedModule,
        target: &GradedModule,
        p: i32,
        coords: &[RingElement],
    ) -> GradedMap {
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (&(i, r, c), x) in self.elements.iter().zip(coords) {
            if x.is_zero() {
                continue;
            }
            blocks
                .entry(i)
                .or_insert_with(|| Matrix::zeros(ring, target.dim(i + p), source.dim(i)))
                .set(r, c, x.clone());
        }
        let mut map = GradedMap::zero(ring, p, source.clone(), target.clone());
        for (i, m) in blocks {
            map.set_block(i, m).expect("basis shapes");
        }
        map
    }

    pub fn coords_of(&self, ring: SquareZeroRing, map: &GradedMap) -> Vec<RingElement> {
        let mut out = vec![ring.zero(); self.len()];
        for (i, m) in map.blocks() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let x = m.get(r, c);
                    if !x.is_zero() {
                        out[self.index[&(i, r, c)]] = x.clone();
                    }
                }
            }
        }
        out
    }
}

fn hom_module(e: &GradedModule, f: &GradedModule) -> GradedModule {
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    for (i, a) in e.iter() {
        for (j, b) in f.iter() {
            *dims.entry(j - i).or_default() += a * b;
        }
    }
    GradedModule::new(dims)
}

/// The full dg-category on the given complexes, with objects `X0, X1, …`.
pub fn make_complex_category(complexes: &[ChainComplex]) -> Result<DgCategory, DgError> {
    let Some(first) = complexes.first() else {
        return Ok(DgCategory::empty(SquareZeroRing::RATIONALS));
    };
    let ring = first.ring();
    if complexes.iter().any(|c| c.ring() != ring) {
        return Err(DgError::InvalidComplex("complexes over different rings".into()));
    }
    for c in complexes {
        ChainComplex::new(c.d.clone())?;
    }
    let n = complexes.len();
    let mods: Vec<&GradedModule> = complexes.iter().map(ChainComplex::module).collect();
    let homs: Vec<Vec<GradedModule>> = (0..n).map(|x| (0..n).map(|y| hom_module(mods[x], mods[y])).collect()).collect();
    let bases: Vec<Vec<BTreeMap<i32, ComplexBasis>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let degs = homs[x][y].degrees().chain(homs[x][y].degrees().map(|d| d + 1));
                    degs.map(|p| (p, ComplexBasis::new(mods[x], mods[y], p))).collect()
                })
                .collect()
        })
        .collect();

    let mut diff = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let (e, f) = (&complexes[x], &complexes[y]);
            let mut dm = GradedMap::zero(ring, 1, homs[x][y].clone(), homs[x][y].clone());
            for (p, dim) in homs[x][y].iter() {
                let src = &bases[x][y][&p];
                let tgt = &bases[x][y][&(p + 1)];
                let mut m = Matrix::zeros(ring, tgt.len(), dim);
                for k in 0..dim {
                    let mut coords = vec![ring.zero(); dim];
                    coords[k] = ring.one();
                    let b = src.to_map(ring, e.module(), f.module(), p, &coords);
                    let left = compose_maps(&f.d, &b)?;
                    let right = compose_maps(&b, &e.d)?;
                    let lc = tgt.coords_of(ring, &left);
                    let rc = tgt.coords_of(ring, &right);
                    for (r, (a, b)) in lc.iter().zip(&rc).enumerate() {
                        m.set(r, k, &a.clone() - &b.signed(sign(p)));
                    }
                }
                dm.set_block(p, m)?;
            }
            row.push(dm);
        }
        diff.push(row);
    }

    let mut comp: BTreeMap<_, Vec<CompEntry>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (p, _) in homs[x][y].iter() {
                    for (q, _) in homs[y][z].iter() {
                        let fb = &bases[x][y][&p];
                        let gb = &bases[y][z][&q];
                        let ob = ComplexBasis::new(mods[x], mods[z], p + q);
                        let mut entries = Vec::new();
                        for (gi, &(j, r, s)) in gb.elements.iter().enumerate() {
                            let i = j - p;
                            for c in 0..mods[x].dim(i) {
                                let (Some(fi), Some(oi)) = (fb.index((i, s, c)), ob.index((i, r, c))) else {
                                    continue;
                                };
                                entries.push(CompEntry {
                                    left: gi,
                                    right: fi,
                                    out: oi,
                                    coeff: ring.one(),
                                });
                            }
                        }
                        if !entries.is_empty() {
                            comp.insert((x, y, z, q, p), entries);
                        }
                    }
                }
            }
        }
    }

    let units = (0..n)
        .map(|x| {
            let b = &bases[x][x][&0];
            b.coords_of(ring, &GradedMap::identity(ring, mods[x]))
        })
        .collect();
    let labels = (0..n).map(|i| format!("X{i}")).collect();
    DgCategory::new(ring, labels, homs, diff, comp, units)
}

/// Direct sum of shifted points and contractible two-term pieces, then
/// conjugated degreewise by random unipotent changes of basis.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, total_dim: usize, min_degree: i32, max_degree: i32) -> ChainComplex {
    let mut points = Vec::new();
    let mut pairs = Vec::new();
    let mut used = 0;
    while used < total_dim {
        let deg = rng.gen_range(min_degree..=max_degree);
        if used + 2 <= total_dim && deg < max_degree && rng.gen_bool(0.4) {
            pairs.push(deg);
            used += 2;
        } else {
            points.push(deg);
            used += 1;
        }
    }
    assemble_complex(rng, &points, &pairs)
}

/// `⊕ ℚ[−p] ⊕ cone(ℚ[−q] → ℚ[−q−1])` over the given `points` and `pairs`,
/// conjugated degreewise by random unipotent changes of basis.
pub fn assemble_complex<R: Rng + ?Sized>(rng: &mut R, points: &[i32], pairs: &[i32]) -> ChainComplex {
    let ring = SquareZeroRing::RATIONALS;
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut arrows: Vec<(i32, usize, usize)> = Vec::new();
    for &deg in points {
        *dims.entry(deg).or_default() += 1;
    }
    for &deg in pairs {
        let s = *dims.entry(deg).or_default();
        let t = *dims.entry(deg + 1).or_default();
        arrows.push((deg, s, t));
        *dims.get_mut(&deg).unwrap() += 1;
        *dims.get_mut(&(deg + 1)).unwrap() += 1;
    }
    let module = GradedModule::new(dims);
    let mut d = GradedMap::zero(ring, 1, module.clone(), module.clone());
    let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (deg, s, t) in arrows {
        blocks
            .entry(deg)
            .or_insert_with(|| Matrix::zeros(ring, module.dim(deg + 1), module.dim(deg)))
            .set(t, s, ring.one());
    }
    let change: BTreeMap<i32, Matrix> = module.iter().map(|(deg, k)| (deg, random_unipotent(rng, k))).collect();
    for (deg, m) in blocks {
        let p1 = &change[&(deg + 1)];
        let p0inv = change[&deg].inverse().expect("unipotent");
        d.set_block(deg, p1.mul(&m).unwrap().mul(&p0inv).unwrap()).unwrap();
    }
    ChainComplex::new(d).expect("conjugate of a complex")
}

fn random_unipotent<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Matrix {
    let ring = SquareZeroRing::RATIONALS;
    let mut lower = Matrix::identity(ring, k);
    let mut upper = Matrix::identity(ring, k);
    for i in 0..k {
        for j in 0..i {
            lower.set(i, j, ring.scalar(small_integer(rng)));
            upper.set(j, i, ring.scalar(small_integer(rng)));
        }
    }
    lower.mul(&upper).unwrap()
}

/// `count` random complexes of total dimension at most `max_total`.
pub fn random_complex_category(seed: u64, count: usize, max_total: usize) -> DgCategory {
    let mut rng = rng_from_seed(seed);
    let mut budget = max_total;
    let mut complexes = Vec::with_capacity(count);
    for left in (1..=count).rev() {
        let cap = budget - (left - 1);
        let dim = rng.gen_range(1..=cap.min(4));
        budget -= dim;
        complexes.push(random_complex(&mut rng, dim, -1, 1));
    }
    make_complex_category(&complexes).expect("random complexes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::Law;

    fn q() -> SquareZeroRing {
        SquareZeroRing::RATIONALS
    }

    /// 0 → ℚ → ℚ → 0 in degrees 0, 1 with d = 1.
    fn interval() -> ChainComplex {
        let m = GradedModule::new([(0, 1), (1, 1)]);
        let mut d = GradedMap::zero(q(), 1, m.clone(), m);
        d.set_block(0, Matrix::identity(q(), 1)).unwrap();
        ChainComplex::new(d).unwrap()
    }

    #[test]
    fn endomorphisms_of_a_cone() {
        let c = make_complex_category(&[interval()]).unwrap();
        // hom^-1 = Hom(E^1, E^0), hom^0 = End(E^0) ⊕ End(E^1), hom^1 = Hom(E^0, E^1)
        assert_eq!(c.hom(0, 0), &GradedModule::new([(-1, 1), (0, 2), (1, 1)]));
        assert!(c.check_axioms().is_empty());
        // d(h) for h: E^1 → E^0 is d∘h + h∘d = 1 in both degrees: coords (1, 1)
        let h = c.basis(0, 0, -1, 0);
        let one = q().one();
        assert_eq!(c.d(&h).coords, vec![one.clone(), one]);
        assert_eq!(c.d(&h), c.unit(0));
    }

    #[test]
    fn empty_list() {
        assert_eq!(make_complex_category(&[]).unwrap().num_objects(), 0);
    }

    #[test]
    fn non_complex_is_rejected() {
        let m = GradedModule::new([(0, 1), (1, 1), (2, 1)]);
        let mut d = GradedMap::zero(q(), 1, m.clone(), m);
        d.set_block(0, Matrix::identity(q(), 1)).unwrap();
        d.set_block(1, Matrix::identity(q(), 1)).unwrap();
        assert!(matches!(ChainComplex::new(d), Err(DgError::InvalidComplex(_))));
    }

    #[test]
    fn random_categories_satisfy_the_axioms() {
        for seed in 0..100 {
            let c = random_complex_category(seed, 3, 8);
            let report = c.check_axioms();
            assert!(report.is_empty(), "seed {seed}: {:?}", report);
        }
    }

    #[test]
    fn opposites_of_random_categories() {
        for seed in 0..10 {
            let c = random_complex_category(seed, 3, 7);
            let op = c.opposite();
            assert!(op.check_axioms().is_empty(), "seed {seed}");
            assert_eq!(op.opposite(), c);
        }
    }

    #[test]
    fn flipped_differential_sign_breaks_leibniz() {
        let c0 = make_complex_category(&[interval(), ChainComplex::point(q(), 0, 1)]).unwrap();
        let mut c = c0.clone();
        let block = c.differential(0, 1).block(-1);
        assert!(!block.is_zero());
        c.set_differential_block(0, 1, -1, block.scale(&q().int(-1))).unwrap();
        let report = c.check_axioms();
        assert!(report.iter().any(|v| v.law == Law::Leibniz), "{report:?}");
    }
}
