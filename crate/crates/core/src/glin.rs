//! Graded linear algebra over a square-zero ring, and exact linear solving.
//!
//! Every linear system over `B = k ⊕ I` is unfolded into a block lower
//! triangular system over `k`: writing `A = A₀ + Σ εᵢAᵢ` and
//! `x = x₀ + Σ εᵢxᵢ`, the equation `Ax = b` is
//!
//! ```text
//! A₀x₀           = b₀
//! Aᵢx₀ + A₀xᵢ    = bᵢ      (i = 1..m)
//! ```
//!
//! which is solved in one Gaussian elimination so that the choice of `x₀`
//! is never committed before the ideal layers are known to be consistent.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rings::{Rational, RingElement, SquareZeroRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Dense matrix of ring elements, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: SquareZeroRing,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl Matrix {
    pub fn zeros(ring: SquareZeroRing, rows: usize, cols: usize) -> Self {
        Self {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: SquareZeroRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: SquareZeroRing, rows: Vec<Vec<RingElement>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Shape("ragged rows".into()));
            }
            for x in row {
                if !ring.contains(&x) {
                    return Err(LinalgError::Shape("entry over a different ring".into()));
                }
                data.push(x);
            }
        }
        Ok(Self {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: SquareZeroRing, rows: usize, columns: &[Vec<RingElement>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> SquareZeroRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Matrix {
        let data: Vec<_> = self.data.iter().map(f).collect();
        let ring = SquareZeroRing::new(data.first().map_or(self.ring.ideal_rank, RingElement::rank));
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn with_ring(mut self, ring: SquareZeroRing) -> Matrix {
        self.ring = ring;
        self
    }

    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc.add_product(a, x);
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx].add_product(a, rhs.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinalgError::Shape("addition of different shapes".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &RingElement) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..self.clone() }
    }

    /// Two-sided inverse, if it exists.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![self.ring.zero(); n];
            e[j] = self.ring.one();
            cols.push(solve_linear(self, &e)?);
        }
        Ok(Matrix::from_columns(self.ring, n, &cols))
    }
}

/// Reduced row echelon form of a rational matrix; returns pivot columns.
fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        if !inv.is_one() {
            for x in m[rank].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Solves `A x = b` over `ℚ`; free variables are set to zero.
pub fn solve_rational(a: &[Vec<Rational>], ncols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// A basis of the right kernel of a rational matrix.
pub fn kernel_rational(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// The unfolded `k`-matrix of a `B`-matrix (see module docs).
fn unfold(a: &Matrix) -> Vec<Vec<Rational>> {
    let m = a.ring.ideal_rank;
    let (r, c) = (a.rows, a.cols);
    let mut big = vec![vec![Rational::zero(); (m + 1) * c]; (m + 1) * r];
    for i in 0..r {
        for j in 0..c {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for layer in 0..=m {
                big[layer * r + i][layer * c + j] = x.body.clone();
            }
            for (l, v) in x.ideal.iter().enumerate() {
                big[(l + 1) * r + i][j] = v.clone();
            }
        }
    }
    big
}

fn fold(ring: SquareZeroRing, n: usize, flat: &[Rational]) -> Vec<RingElement> {
    (0..n)
        .map(|j| RingElement {
            body: flat[j].clone(),
            ideal: (0..ring.ideal_rank).map(|l| flat[(l + 1) * n + j].clone()).collect(),
        })
        .collect()
}

/// Solves `A x = b` exactly over the ring of `A`.
///
/// Underdetermined systems return the solution with all free variables of
/// the unfolded elimination set to zero.
pub fn solve_linear(a: &Matrix, b: &[RingElement]) -> Result<Vec<RingElement>, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::Shape(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.rows
        )));
    }
    let ring = a.ring;
    if b.iter().any(|x| !ring.contains(x)) {
        return Err(LinalgError::Shape("right-hand side over a different ring".into()));
    }
    let big = unfold(a);
    let mut rhs = Vec::with_capacity((ring.ideal_rank + 1) * a.rows);
    rhs.extend(b.iter().map(|x| x.body.clone()));
    for l in 0..ring.ideal_rank {
        rhs.extend(b.iter().map(|x| x.ideal[l].clone()));
    }
    let flat = solve_rational(&big, (ring.ideal_rank + 1) * a.cols, &rhs).ok_or(LinalgError::NoSolution)?;
    Ok(fold(ring, a.cols, &flat))
}

/// A `k`-basis of `{x ∈ Bᶜ : A x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<RingElement>> {
    let ring = a.ring;
    let big = unfold(a);
    kernel_rational(&big, (ring.ideal_rank + 1) * a.cols)
        .iter()
        .map(|v| fold(ring, a.cols, v))
        .collect()
}

/// Ranks of a bounded graded free module, keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct GradedModule {
    dims: BTreeMap<i32, usize>,
}

impl GradedModule {
    pub fn new(dims: impl IntoIterator<Item = (i32, usize)>) -> Self {
        Self {
            dims: dims.into_iter().filter(|&(_, n)| n > 0).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees carrying a nonzero rank, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }
}

/// A homogeneous map between graded modules. `blocks[d]` sends the degree
/// `d` part of the source to the degree `d + degree` part of the target;
/// absent blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub ring: SquareZeroRing,
    pub degree: i32,
    pub source: GradedModule,
    pub target: GradedModule,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn zero(ring: SquareZeroRing, degree: i32, source: GradedModule, target: GradedModule) -> Self {
        Self {
            ring,
            degree,
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(ring: SquareZeroRing, module: &GradedModule) -> Self {
        let mut map = Self::zero(ring, 0, module.clone(), module.clone());
        for (d, n) in module.iter() {
            map.blocks.insert(d, Matrix::identity(ring, n));
        }
        map
    }

    pub fn set_block(&mut self, source_degree: i32, m: Matrix) -> Result<(), LinalgError> {
        let want = (self.target.dim(source_degree + self.degree), self.source.dim(source_degree));
        if (m.rows(), m.cols()) != want {
            return Err(LinalgError::Shape(format!(
                "block at degree {source_degree} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
        if want.0 == 0 || want.1 == 0 || m.is_zero() {
            self.blocks.remove(&source_degree);
        } else {
            self.blocks.insert(source_degree, m);
        }
        Ok(())
    }

    /// The block at a source degree, materializing zeros.
    pub fn block(&self, source_degree: i32) -> Matrix {
        self.blocks.get(&source_degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.ring,
                self.target.dim(source_degree + self.degree),
                self.source.dim(source_degree),
            )
        })
    }

    pub fn block_ref(&self, source_degree: i32) -> Option<&Matrix> {
        self.blocks.get(&source_degree)
    }

    /// Nonzero stored blocks keyed by source degree.
    pub fn blocks(&self) -> impl Iterator<Item = (i32, &Matrix)> {
        self.blocks.iter().map(|(&d, m)| (d, m))
    }

    pub fn apply(&self, source_degree: i32, v: &[RingElement]) -> Vec<RingElement> {
        match self.blocks.get(&source_degree) {
            Some(m) => m.apply(v),
            None => vec![self.ring.zero(); self.target.dim(source_degree + self.degree)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }
}

/// `g ∘ f`: degrees add, blocks multiply.
pub fn compose_maps(g: &GradedMap, f: &GradedMap) -> Result<GradedMap, LinalgError> {
    if f.target != g.source {
        return Err(LinalgError::Shape("target of f differs from source of g".into()));
    }
    if f.ring != g.ring {
        return Err(LinalgError::Shape("maps over different rings".into()));
    }
    let mut out = GradedMap::zero(f.ring, f.degree + g.degree, f.source.clone(), g.target.clone());
    for (d, _) in f.source.iter() {
        let Some(fb) = f.blocks.get(&d) else { continue };
        let Some(gb) = g.blocks.get(&(d + f.degree)) else { continue };
        out.set_block(d, gb.mul(fb)?)?;
    }
    Ok(out)
}
