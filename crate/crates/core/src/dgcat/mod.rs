//! Finite dg-categories presented by structure constants.
//!
//! Hom spaces are bounded graded free modules with a fixed basis in every
//! degree. The differential is stored as a degree `+1` [`GradedMap`] per
//! ordered pair of objects, and composition as sparse structure-constant
//! tensors. Sign conventions:
//!
//! ```text
//! d(g ∘ f) = d(g) ∘ f + (-1)^{|g|} g ∘ d(f)
//! ```

mod complex;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::Rng;
use thiserror::Error;

use crate::glin::{kernel_basis, GradedMap, GradedModule, LinalgError, Matrix};
use crate::rings::{RingElement, SquareZeroRing};
use crate::sample::{small_element, small_integer};

pub use complex::{
    assemble_complex, make_complex_category, random_complex, random_complex_category, ChainComplex, ComplexBasis,
};
pub use witness::{find_equivalence_witness, reset_witness_calls, witness_calls, EquivalenceWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgError {
    #[error("malformed category: {0}")]
    Structure(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("morphism is not a homotopy equivalence")]
    NotEquivalence,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A homogeneous morphism, as coordinates in the stored basis of
/// `hom^degree(source, target)`. Objects are referred to by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    pub coords: Vec<RingElement>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RingElement::is_zero)
    }

    fn check(&self, other: &Morphism) {
        assert!(
            self.source == other.source && self.target == other.target && self.degree == other.degree,
            "adding morphisms of different shapes: ({},{},{}) vs ({},{},{})",
            self.source,
            self.target,
            self.degree,
            other.source,
            other.target,
            other.degree
        );
    }

    pub fn scale(&self, c: &RingElement) -> Morphism {
        Morphism {
            coords: self.coords.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by `±1`.
    pub fn signed(&self, sign: i32) -> Morphism {
        if sign >= 0 {
            self.clone()
        } else {
            -self
        }
    }

    pub fn map_coords(&self, f: impl Fn(&RingElement) -> RingElement) -> Morphism {
        Morphism {
            coords: self.coords.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// Every coordinate lies in the ideal.
    pub fn in_ideal(&self) -> bool {
        self.coords.iter().all(RingElement::in_ideal)
    }

    pub fn add_assign(&mut self, other: &Morphism) {
        self.check(other);
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Morphism) {
        self.check(other);
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
    }

    /// `self += sign * other`.
    pub fn add_signed(&mut self, sign: i32, other: &Morphism) {
        if sign >= 0 {
            self.add_assign(other)
        } else {
            self.sub_assign(other)
        }
    }
}

impl Add for &Morphism {
    type Output = Morphism;
    fn add(self, rhs: &Morphism) -> Morphism {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Morphism {
    type Output = Morphism;
    fn sub(self, rhs: &Morphism) -> Morphism {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Morphism {
    type Output = Morphism;
    fn neg(self) -> Morphism {
        self.map_coords(RingElement::neg_ref)
    }
}

/// `(source, middle, target, |g|, |f|)` for the pairing `hom(Y,Z) ⊗ hom(X,Y) → hom(X,Z)`.
pub type CompKey = (usize, usize, usize, i32, i32);

/// One structure constant: `g_left ∘ f_right` contributes `coeff · e_out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompEntry {
    pub left: usize,
    pub right: usize,
    pub out: usize,
    pub coeff: RingElement,
}

/// Structure constants for one composition block, grouped by left index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompTensor {
    by_left: Vec<Vec<(usize, usize, RingElement)>>,
}

impl CompTensor {
    /// Sums duplicate entries and drops zeros, so equal pairings compare equal.
    pub fn from_entries(left_dim: usize, entries: impl IntoIterator<Item = CompEntry>) -> Self {
        let mut acc: Vec<BTreeMap<(usize, usize), RingElement>> = vec![BTreeMap::new(); left_dim];
        for e in entries {
            let slot = acc[e.left].entry((e.right, e.out));
            match slot {
                std::collections::btree_map::Entry::Occupied(mut o) => *o.get_mut() += &e.coeff,
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(e.coeff);
                }
            }
        }
        Self {
            by_left: acc
                .into_iter()
                .map(|m| {
                    m.into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|((r, o), c)| (r, o, c))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = CompEntry> + '_ {
        self.by_left.iter().enumerate().flat_map(|(left, v)| {
            v.iter().map(move |(right, out, coeff)| CompEntry {
                left,
                right: *right,
                out: *out,
                coeff: coeff.clone(),
            })
        })
    }

    pub fn is_empty(&self) -> bool {
        self.by_left.iter().all(Vec::is_empty)
    }

    fn map(&self, f: &impl Fn(&RingElement) -> RingElement) -> Self {
        Self {
            by_left: self
                .by_left
                .iter()
                .map(|v| v.iter().map(|(r, o, c)| (*r, *o, f(c))).filter(|e| !e.2.is_zero()).collect())
                .collect(),
        }
    }
}

/// Which identity a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    DSquared,
    Leibniz,
    Associativity,
    Unit,
    UnitClosed,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::DSquared => "d^2 = 0",
            Law::Leibniz => "leibniz",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::UnitClosed => "d(1) = 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.law, self.location)
    }
}

/// A finite dg-category over a square-zero ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgCategory {
    ring: SquareZeroRing,
    objects: Vec<String>,
    homs: Vec<Vec<GradedModule>>,
    diff: Vec<Vec<GradedMap>>,
    comp: BTreeMap<CompKey, CompTensor>,
    units: Vec<Vec<RingElement>>,
}

impl DgCategory {
    /// Assembles a category from raw structure data, checking shapes only.
    ///
    /// `homs[x][y]` is `hom(x, y)`; `diff[x][y]` must be a degree `+1` map on
    /// it; `units[x]` are coordinates in `hom⁰(x, x)`. The axioms are not
    /// checked here, see [`DgCategory::check_axioms`].
    pub fn new(
        ring: SquareZeroRing,
        objects: Vec<String>,
        homs: Vec<Vec<GradedModule>>,
        diff: Vec<Vec<GradedMap>>,
        comp: BTreeMap<CompKey, Vec<CompEntry>>,
        units: Vec<Vec<RingElement>>,
    ) -> Result<Self, DgError> {
        let n = objects.len();
        let bad = |s: String| Err(DgError::Structure(s));
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return bad(format!("duplicate object label {o:?}"));
            }
        }
        if homs.len() != n || homs.iter().any(|r| r.len() != n) {
            return bad("hom table is not square in the objects".into());
        }
        if diff.len() != n || diff.iter().any(|r| r.len() != n) {
            return bad("differential table is not square in the objects".into());
        }
        for x in 0..n {
            for y in 0..n {
                let dm = &diff[x][y];
                if dm.degree != 1 || dm.source != homs[x][y] || dm.target != homs[x][y] || dm.ring != ring {
                    return bad(format!(
                        "differential on ({}, {}) has the wrong shape",
                        objects[x], objects[y]
                    ));
                }
            }
        }
        if units.len() != n {
            return bad("one unit per object is required".into());
        }
        for (x, u) in units.iter().enumerate() {
            if u.len() != homs[x][x].dim(0) || u.iter().any(|c| !ring.contains(c)) {
                return bad(format!("unit of {} has the wrong length", objects[x]));
            }
        }
        let mut tensors = BTreeMap::new();
        for (key, entries) in comp {
            let (x, y, z, q, p) = key;
            if x >= n || y >= n || z >= n {
                return bad("composition refers to an unknown object".into());
            }
            let (gl, fl, ol) = (homs[y][z].dim(q), homs[x][y].dim(p), homs[x][z].dim(p + q));
            for e in &entries {
                if e.left >= gl || e.right >= fl || e.out >= ol || !ring.contains(&e.coeff) {
                    return bad(format!(
                        "composition entry out of range for ({}, {}, {}) in degrees ({q}, {p})",
                        objects[x], objects[y], objects[z]
                    ));
                }
            }
            let t = CompTensor::from_entries(gl, entries);
            if !t.is_empty() {
                tensors.insert(key, t);
            }
        }
        Ok(Self {
            ring,
            objects,
            homs,
            diff,
            comp: tensors,
            units,
        })
    }

    pub fn empty(ring: SquareZeroRing) -> Self {
        Self {
            ring,
            objects: Vec::new(),
            homs: Vec::new(),
            diff: Vec::new(),
            comp: BTreeMap::new(),
            units: Vec::new(),
        }
    }

    pub fn ring(&self) -> SquareZeroRing {
        self.ring
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Result<usize, DgError> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| DgError::UnknownObject(label.to_string()))
    }

    pub fn label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> &GradedModule {
        &self.homs[x][y]
    }

    pub fn dim(&self, x: usize, y: usize, degree: i32) -> usize {
        self.homs[x][y].dim(degree)
    }

    pub fn differential(&self, x: usize, y: usize) -> &GradedMap {
        &self.diff[x][y]
    }

    pub fn composition(&self) -> impl Iterator<Item = (CompKey, &CompTensor)> {
        self.comp.iter().map(|(k, t)| (*k, t))
    }

    pub fn unit_coords(&self, x: usize) -> &[RingElement] {
        &self.units[x]
    }

    /// Replaces the labels; mostly for readable fixtures.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, DgError> {
        if labels.len() != self.objects.len() {
            return Err(DgError::Structure("wrong number of labels".into()));
        }
        for (i, o) in labels.iter().enumerate() {
            if labels[..i].contains(o) {
                return Err(DgError::Structure(format!("duplicate object label {o:?}")));
            }
        }
        self.objects = labels;
        Ok(self)
    }

    /// Overwrites one differential block; shape is checked, axioms are not.
    pub fn set_differential_block(&mut self, x: usize, y: usize, degree: i32, m: Matrix) -> Result<(), DgError> {
        self.diff[x][y].set_block(degree, m)?;
        Ok(())
    }

    pub fn zero(&self, x: usize, y: usize, degree: i32) -> Morphism {
        Morphism {
            source: x,
            target: y,
            degree,
            coords: vec![self.ring.zero(); self.dim(x, y, degree)],
        }
    }

    pub fn basis(&self, x: usize, y: usize, degree: i32, i: usize) -> Morphism {
        let mut m = self.zero(x, y, degree);
        m.coords[i] = self.ring.one();
        m
    }

    pub fn unit(&self, x: usize) -> Morphism {
        Morphism {
            source: x,
            target: x,
            degree: 0,
            coords: self.units[x].clone(),
        }
    }

    pub fn morphism(&self, x: usize, y: usize, degree: i32, coords: Vec<RingElement>) -> Result<Morphism, DgError> {
        if coords.len() != self.dim(x, y, degree) || coords.iter().any(|c| !self.ring.contains(c)) {
            return Err(DgError::Structure(format!(
                "expected {} coordinates over {} for hom^{degree}({}, {})",
                self.dim(x, y, degree),
                self.ring,
                self.objects[x],
                self.objects[y]
            )));
        }
        Ok(Morphism {
            source: x,
            target: y,
            degree,
            coords,
        })
    }

    pub fn d(&self, f: &Morphism) -> Morphism {
        Morphism {
            source: f.source,
            target: f.target,
            degree: f.degree + 1,
            coords: self.diff[f.source][f.target].apply(f.degree, &f.coords),
        }
    }

    /// `g ∘ f`; panics if `f.target != g.source`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        assert_eq!(
            f.target, g.source,
            "composing {}->{} after {}->{}",
            g.source, g.target, f.source, f.target
        );
        let mut out = self.zero(f.source, g.target, f.degree + g.degree);
        self.compose_into(&mut out, 1, g, f);
        out
    }

    pub fn try_compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, DgError> {
        if f.target != g.source {
            return Err(DgError::Precondition(format!(
                "cannot compose a morphism out of {} after one into {}",
                self.objects[g.source], self.objects[f.target]
            )));
        }
        Ok(self.compose(g, f))
    }

    /// `out += sign · (g ∘ f)`.
    pub fn compose_into(&self, out: &mut Morphism, sign: i32, g: &Morphism, f: &Morphism) {
        debug_assert_eq!(f.target, g.source);
        debug_assert_eq!((out.source, out.target, out.degree), (f.source, g.target, f.degree + g.degree));
        let Some(t) = self.comp.get(&(f.source, f.target, g.target, g.degree, f.degree)) else {
            return;
        };
        for (gi, gc) in g.coords.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            for (fi, oi, c) in &t.by_left[gi] {
                let fc = &f.coords[*fi];
                if fc.is_zero() {
                    continue;
                }
                let coeff = if sign >= 0 { c * gc } else { -&(c * gc) };
                out.coords[*oi].add_product(&coeff, fc);
            }
        }
    }

    /// The category with every structure constant mapped by `f`, over `ring`.
    pub fn map_scalars(&self, ring: SquareZeroRing, f: impl Fn(&RingElement) -> RingElement) -> DgCategory {
        let diff = self
            .diff
            .iter()
            .map(|row| {
                row.iter()
                    .map(|dm| {
                        let mut out = GradedMap::zero(ring, 1, dm.source.clone(), dm.target.clone());
                        for (deg, m) in dm.blocks() {
                            out.set_block(deg, m.map(&f).with_ring(ring)).expect("same shape");
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        DgCategory {
            ring,
            objects: self.objects.clone(),
            homs: self.homs.clone(),
            diff,
            comp: self
                .comp
                .iter()
                .map(|(k, t)| (*k, t.map(&f)))
                .filter(|(_, t)| !t.is_empty())
                .collect(),
            units: self.units.iter().map(|u| u.iter().map(&f).collect()).collect(),
        }
    }

    /// The category with all structure constants reduced modulo the ideal.
    pub fn reduce(&self) -> DgCategory {
        self.map_scalars(self.ring.residue(), RingElement::reduce)
    }

    /// A morphism with small random coordinates.
    pub fn random_morphism<R: Rng + ?Sized>(&self, rng: &mut R, x: usize, y: usize, degree: i32) -> Morphism {
        let mut m = self.zero(x, y, degree);
        for c in m.coords.iter_mut() {
            *c = small_element(rng, self.ring);
        }
        m
    }

    /// A random cycle, drawn from a `k`-basis of the kernel of `d`.
    pub fn random_closed<R: Rng + ?Sized>(&self, rng: &mut R, x: usize, y: usize, degree: i32) -> Morphism {
        let dm = self.diff[x][y].block(degree);
        let mut m = self.zero(x, y, degree);
        for v in kernel_basis(&dm) {
            let c = self.ring.scalar(small_integer(rng));
            for (a, b) in m.coords.iter_mut().zip(&v) {
                a.add_product(&c, b);
            }
        }
        m
    }

    /// Every composition-side identity, checked on basis elements.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.check_differential(&mut out);
        self.check_units(&mut out);
        self.check_leibniz(&mut out);
        self.check_associativity(&mut out);
        out
    }

    /// Only `d² = 0` and `d(1) = 0`.
    pub fn check_differential(&self, out: &mut Vec<Violation>) {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                let dm = &self.diff[x][y];
                for deg in self.homs[x][y].degrees() {
                    let (Some(a), Some(b)) = (dm.block_ref(deg), dm.block_ref(deg + 1)) else {
                        continue;
                    };
                    if !b.mul(a).expect("shapes").is_zero() {
                        out.push(Violation {
                            law: Law::DSquared,
                            location: self.block_location(x, y, deg),
                        });
                    }
                }
            }
            if !self.d(&self.unit(x)).is_zero() {
                out.push(Violation {
                    law: Law::UnitClosed,
                    location: format!("object {}", self.objects[x]),
                });
            }
        }
    }

    fn block_location(&self, x: usize, y: usize, deg: i32) -> String {
        format!("({}, {}, degree {deg})", self.objects[x], self.objects[y])
    }

    fn check_units(&self, out: &mut Vec<Violation>) {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                for (deg, dim) in self.homs[x][y].iter() {
                    for i in 0..dim {
                        let f = self.basis(x, y, deg, i);
                        if self.compose(&self.unit(y), &f) != f || self.compose(&f, &self.unit(x)) != f {
                            out.push(Violation {
                                law: Law::Unit,
                                location: format!("{} basis {i}", self.block_location(x, y, deg)),
                            });
                            break;
                        }
                    }
                }
            }
        }
    }

    fn check_leibniz(&self, out: &mut Vec<Violation>) {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for (p, fd) in self.homs[x][y].iter() {
                        for (q, gd) in self.homs[y][z].iter() {
                            'block: for gi in 0..gd {
                                let g = self.basis(y, z, q, gi);
                                let dg = self.d(&g);
                                for fi in 0..fd {
                                    let f = self.basis(x, y, p, fi);
                                    let lhs = self.d(&self.compose(&g, &f));
                                    let mut rhs = self.compose(&dg, &f);
                                    self.compose_into(&mut rhs, sign(q), &g, &self.d(&f));
                                    if lhs != rhs {
                                        out.push(Violation {
                                            law: Law::Leibniz,
                                            location: format!(
                                                "({}, {}, {}) degrees ({q}, {p}) basis ({gi}, {fi})",
                                                self.objects[x], self.objects[y], self.objects[z]
                                            ),
                                        });
                                        break 'block;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_associativity(&self, out: &mut Vec<Violation>) {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        self.check_associativity_at(x, y, z, w, out);
                    }
                }
            }
        }
    }

    fn check_associativity_at(&self, x: usize, y: usize, z: usize, w: usize, out: &mut Vec<Violation>) {
        for (p, fd) in self.homs[x][y].iter() {
            for (q, gd) in self.homs[y][z].iter() {
                for (r, hd) in self.homs[z][w].iter() {
                    for gi in 0..gd {
                        let g = self.basis(y, z, q, gi);
                        for hi in 0..hd {
                            let hg = self.compose(&self.basis(z, w, r, hi), &g);
                            let h = self.basis(z, w, r, hi);
                            for fi in 0..fd {
                                let f = self.basis(x, y, p, fi);
                                let left = self.compose(&hg, &f);
                                let right = self.compose(&h, &self.compose(&g, &f));
                                if left != right {
                                    out.push(Violation {
                                        law: Law::Associativity,
                                        location: format!(
                                            "({}, {}, {}, {}) degrees ({r}, {q}, {p})",
                                            self.objects[x], self.objects[y], self.objects[z], self.objects[w]
                                        ),
                                    });
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// The opposite category: `hom^op(X, Y) = hom(Y, X)` and
    /// `g ∘_op f = (-1)^{|f||g|} f ∘ g`.
    pub fn opposite(&self) -> DgCategory {
        let n = self.num_objects();
        let mut comp = BTreeMap::new();
        for (&(a, b, c, q, p), tensor) in &self.comp {
            // tensor: hom(b,c)^q ⊗ hom(a,b)^p → hom(a,c); in the opposite
            // this is hom^op(b,a)^p ⊗ hom^op(c,b)^q → hom^op(c,a).
            let s = sign(p * q);
            let left_dim = self.dim(a, b, p);
            let entries = tensor.entries().map(|e| CompEntry {
                left: e.right,
                right: e.left,
                out: e.out,
                coeff: e.coeff.signed(s),
            });
            comp.insert((c, b, a, p, q), CompTensor::from_entries(left_dim, entries));
        }
        DgCategory {
            ring: self.ring,
            objects: self.objects.clone(),
            homs: transpose(&self.homs, n),
            diff: transpose(&self.diff, n),
            comp,
            units: self.units.clone(),
        }
    }

    /// The morphism in the opposite category with the same coordinates.
    pub fn to_opposite(f: &Morphism) -> Morphism {
        Morphism {
            source: f.target,
            target: f.source,
            ..f.clone()
        }
    }
}

fn transpose<T: Clone>(v: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    (0..n).map(|x| (0..n).map(|y| v[y][x].clone()).collect()).collect()
}

/// `(-1)^k` as `±1`.
pub fn sign(k: i32) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat_int;

    /// Λ[e] with |e| = -1 and d = 0.
    fn exterior() -> DgCategory {
        let ring = SquareZeroRing::RATIONALS;
        let module = GradedModule::new([(-1, 1), (0, 1)]);
        let mut comp = BTreeMap::new();
        let one = ring.one();
        // basis: degree 0 -> 1, degree -1 -> e
        comp.insert((0, 0, 0, 0, 0), vec![CompEntry { left: 0, right: 0, out: 0, coeff: one.clone() }]);
        comp.insert((0, 0, 0, 0, -1), vec![CompEntry { left: 0, right: 0, out: 0, coeff: one.clone() }]);
        comp.insert((0, 0, 0, -1, 0), vec![CompEntry { left: 0, right: 0, out: 0, coeff: one }]);
        DgCategory::new(
            ring,
            vec!["P".into()],
            vec![vec![module.clone()]],
            vec![vec![GradedMap::zero(ring, 1, module.clone(), module)]],
            comp,
            vec![vec![ring.one()]],
        )
        .unwrap()
    }

    #[test]
    fn exterior_algebra_is_a_dg_category() {
        let c = exterior();
        assert!(c.check_axioms().is_empty());
        let e = c.basis(0, 0, -1, 0);
        assert!(c.compose(&e, &e).coords.is_empty());
    }

    #[test]
    fn exterior_algebra_is_self_opposite_up_to_sign() {
        let c = exterior();
        let op = c.opposite();
        assert!(op.check_axioms().is_empty());
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn shape_errors_are_reported() {
        let ring = SquareZeroRing::RATIONALS;
        let module = GradedModule::new([(0, 1)]);
        let r = DgCategory::new(
            ring,
            vec!["P".into()],
            vec![vec![module.clone()]],
            vec![vec![GradedMap::zero(ring, 1, module.clone(), module)]],
            BTreeMap::from([((0, 0, 0, 0, 0), vec![CompEntry { left: 1, right: 0, out: 0, coeff: ring.one() }])]),
            vec![vec![ring.one()]],
        );
        assert!(matches!(r, Err(DgError::Structure(_))));
    }

    #[test]
    fn morphism_arithmetic() {
        let c = exterior();
        let e = c.basis(0, 0, -1, 0);
        let two = c.ring().scalar(rat_int(2));
        assert_eq!(&(&e + &e) - &e.scale(&two), c.zero(0, 0, -1));
        assert_eq!(-&(-&e), e);
        assert_eq!(e.signed(-1), -&e);
    }
}
