//! Coherent nerve simplices of a dg-category.
//!
//! An `n`-simplex is a list of objects `X₀, …, X_n` and, for every strictly
//! increasing sequence `I = (i₀ < ⋯ < i_p)` with `p ≥ 1`, a cell
//! `α_I ∈ hom^{1−p}(X_{i₀}, X_{i_p})` such that
//!
//! ```text
//! d α_I = Σ_{0<j<p} (−1)^{p(j+1)} α_{I≥j} ∘ α_{I≤j} + Σ_{0<l<p} (−1)^l α_{I∖i_l}
//! ```
//!
//! where `I≤j = (i₀, …, i_j)` and `I≥j = (i_j, …, i_p)`. Degenerate
//! sequences are not stored: `α(i, i) = 1` and longer degenerate cells vanish.
//!
//! Sequences are encoded as bitmasks over the vertices.

mod cochain;
mod interval;
mod signs;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::dgcat::{find_equivalence_witness, DgCategory, DgError, Morphism};
use crate::rings::RingElement;

pub use cochain::{
    cochain_compose, cochain_compose_mutated, cochain_differential, cochain_differential_mutated, curvature_cochain,
    random_cochain, star_product, NerveCochain,
};
pub use interval::IntervalDg;
pub use signs::{calibrate_signs, calibrate_tau, free_model_check, SignPattern, TauRule};

/// Largest supported simplex dimension.
pub const MAX_DIMENSION: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("index {index} out of range for a simplex of dimension {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("dimension {0} is not supported")]
    Dimension(usize),
    #[error("missing cell {0}")]
    MissingCell(String),
    #[error("malformed simplex: {0}")]
    Structure(String),
    #[error(transparent)]
    Dg(#[from] DgError),
}

/// Bitmask of a vertex sequence.
pub type Seq = u32;

pub fn seq_of(vertices: &[usize]) -> Seq {
    vertices.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn vertices(s: Seq) -> Vec<usize> {
    (0..32).filter(|&v| s & (1 << v) != 0).collect()
}

/// Number of edges `p`, i.e. length minus one.
pub fn edges(s: Seq) -> usize {
    (s.count_ones() as usize).saturating_sub(1)
}

/// `(i₀, …, i_j)`.
pub fn prefix(s: Seq, j: usize) -> Seq {
    seq_of(&vertices(s)[..=j])
}

/// `(i_j, …, i_p)`.
pub fn suffix(s: Seq, j: usize) -> Seq {
    seq_of(&vertices(s)[j..])
}

/// `I ∖ i_l`.
pub fn delete(s: Seq, l: usize) -> Seq {
    s & !(1 << vertices(s)[l])
}

pub fn first_vertex(s: Seq) -> usize {
    s.trailing_zeros() as usize
}

pub fn last_vertex(s: Seq) -> usize {
    31 - s.leading_zeros() as usize
}

pub fn full_seq(n: usize) -> Seq {
    ((1u64 << (n + 1)) - 1) as Seq
}

/// `"0,2,3"`.
pub fn format_seq(s: Seq) -> String {
    vertices(s).iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_seq(text: &str) -> Result<Seq, NerveError> {
    let err = || NerveError::Structure(format!("bad sequence {text:?}"));
    let vs: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    if vs.len() < 2 || vs.windows(2).any(|w| w[0] >= w[1]) || vs.iter().any(|&v| v > MAX_DIMENSION) {
        return Err(err());
    }
    Ok(seq_of(&vs))
}

/// All sequences in `{0, …, n}` with at least two vertices, by length then lexicographically.
pub fn sequences(n: usize) -> Vec<Seq> {
    let mut out: Vec<Seq> = (0..=full_seq(n)).filter(|s| s.count_ones() >= 2).collect();
    out.sort_by_key(|&s| (s.count_ones(), vertices(s)));
    out
}

/// A (possibly partial) simplex. Horns are simplices with two cells absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveSimplex {
    pub n: usize,
    pub objects: Vec<usize>,
    cells: BTreeMap<Seq, Morphism>,
}

/// What went wrong at one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Missing,
    Shape(String),
    /// `d α_I − RHS(I) ≠ 0`.
    Residual,
    NotEquivalence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexViolation {
    pub sequence: Seq,
    pub defect: Defect,
}

impl fmt::Display for SimplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_seq(self.sequence);
        match &self.defect {
            Defect::Missing => write!(f, "cell ({s}) is missing"),
            Defect::Shape(m) => write!(f, "cell ({s}) is malformed: {m}"),
            Defect::Residual => write!(f, "condition fails at ({s})"),
            Defect::NotEquivalence => write!(f, "edge ({s}) is not an equivalence"),
        }
    }
}

impl NerveSimplex {
    /// An empty cell table over the given objects.
    pub fn new(objects: Vec<usize>) -> Result<Self, NerveError> {
        if objects.is_empty() || objects.len() > MAX_DIMENSION + 1 {
            return Err(NerveError::Dimension(objects.len().saturating_sub(1)));
        }
        Ok(Self {
            n: objects.len() - 1,
            objects,
            cells: BTreeMap::new(),
        })
    }

    /// All objects `x`, identity edges, zero higher cells.
    pub fn identity(c: &DgCategory, x: usize, n: usize) -> Self {
        let mut s = Self::new(vec![x; n + 1]).expect("dimension");
        for seq in sequences(n) {
            let p = edges(seq);
            let cell = if p == 1 { c.unit(x) } else { c.zero(x, x, 1 - p as i32) };
            s.cells.insert(seq, cell);
        }
        s
    }

    pub fn get(&self, s: Seq) -> Option<&Morphism> {
        self.cells.get(&s)
    }

    pub fn cell(&self, s: Seq) -> &Morphism {
        self.cells
            .get(&s)
            .unwrap_or_else(|| panic!("cell ({}) is not present", format_seq(s)))
    }

    pub fn set_cell(&mut self, s: Seq, m: Morphism) {
        self.cells.insert(s, m);
    }

    pub fn remove_cell(&mut self, s: Seq) -> Option<Morphism> {
        self.cells.remove(&s)
    }

    pub fn cells(&self) -> impl Iterator<Item = (Seq, &Morphism)> {
        self.cells.iter().map(|(s, m)| (*s, m))
    }

    pub fn is_complete(&self) -> bool {
        sequences(self.n).iter().all(|s| self.cells.contains_key(s))
    }

    /// Expected `(source, target, degree)` of the cell at `s`.
    pub fn cell_shape(&self, s: Seq) -> (usize, usize, i32) {
        (
            self.objects[first_vertex(s)],
            self.objects[last_vertex(s)],
            1 - edges(s) as i32,
        )
    }

    pub fn edge(&self, i: usize, j: usize) -> &Morphism {
        self.cell(seq_of(&[i, j]))
    }

    pub fn map_cells(&self, f: impl Fn(&Morphism) -> Morphism) -> Self {
        Self {
            n: self.n,
            objects: self.objects.clone(),
            cells: self.cells.iter().map(|(s, m)| (*s, f(m))).collect(),
        }
    }

    /// Reduction of every coordinate modulo the ideal.
    pub fn reduce(&self) -> Self {
        self.map_cells(|m| m.map_coords(RingElement::reduce))
    }

    /// `∂_j`: drops vertex `j`.
    pub fn face(&self, j: usize) -> Result<Self, NerveError> {
        if j > self.n || self.n == 0 {
            return Err(NerveError::OutOfRange { index: j, n: self.n });
        }
        let lift = |v: usize| if v < j { v } else { v + 1 };
        let mut objects = self.objects.clone();
        objects.remove(j);
        let mut out = Self::new(objects)?;
        for s in sequences(self.n - 1) {
            let old = seq_of(&vertices(s).into_iter().map(lift).collect::<Vec<_>>());
            if let Some(m) = self.cells.get(&old) {
                out.cells.insert(s, m.clone());
            }
        }
        Ok(out)
    }

    /// `s_j`: repeats vertex `j` with an identity edge.
    pub fn degeneracy(&self, c: &DgCategory, j: usize) -> Result<Self, NerveError> {
        if j > self.n {
            return Err(NerveError::OutOfRange { index: j, n: self.n });
        }
        let collapse = |v: usize| if v <= j { v } else { v - 1 };
        let mut objects = self.objects.clone();
        objects.insert(j, self.objects[j]);
        let mut out = Self::new(objects)?;
        let pair = seq_of(&[j, j + 1]);
        for s in sequences(self.n + 1) {
            let cell = if s == pair {
                c.unit(self.objects[j])
            } else if s & pair == pair {
                let (x, y, deg) = out.cell_shape(s);
                c.zero(x, y, deg)
            } else {
                let old = seq_of(&vertices(s).into_iter().map(collapse).collect::<Vec<_>>());
                match self.cells.get(&old) {
                    Some(m) => m.clone(),
                    None => continue,
                }
            };
            out.cells.insert(s, cell);
        }
        Ok(out)
    }

    /// Shape check of one cell against the category.
    pub fn check_cell(&self, c: &DgCategory, s: Seq) -> Option<Defect> {
        let Some(m) = self.cells.get(&s) else {
            return Some(Defect::Missing);
        };
        let (x, y, deg) = self.cell_shape(s);
        if (m.source, m.target, m.degree) != (x, y, deg) {
            return Some(Defect::Shape(format!(
                "expected hom^{deg}({}, {}), found hom^{}({}, {})",
                c.label(x),
                c.label(y),
                m.degree,
                c.label(m.source),
                c.label(m.target)
            )));
        }
        if m.coords.len() != c.dim(x, y, deg) || m.coords.iter().any(|v| !c.ring().contains(v)) {
            return Some(Defect::Shape("wrong number of coordinates".into()));
        }
        None
    }
}

/// Right-hand side of the simplex condition at `s`, from the proper subcells.
pub fn condition_rhs(
    c: &DgCategory,
    sigma: &NerveSimplex,
    s: Seq,
    pattern: SignPattern,
) -> Result<Morphism, NerveError> {
    rhs_excluding(c, sigma, s, pattern, None)
}

/// The right-hand side with the term involving `skip` left out.
pub fn rhs_excluding(
    c: &DgCategory,
    sigma: &NerveSimplex,
    s: Seq,
    pattern: SignPattern,
    skip: Option<Seq>,
) -> Result<Morphism, NerveError> {
    let p = edges(s);
    let (x, y, deg) = sigma.cell_shape(s);
    let mut out = c.zero(x, y, deg + 1);
    let get = |t: Seq| sigma.get(t).ok_or_else(|| NerveError::MissingCell(format_seq(t)));
    for j in 1..p {
        let (hi, lo) = (suffix(s, j), prefix(s, j));
        if skip == Some(hi) || skip == Some(lo) {
            continue;
        }
        c.compose_into(&mut out, pattern.comp_sign(j, p), get(hi)?, get(lo)?);
    }
    for l in 1..p {
        let t = delete(s, l);
        if skip == Some(t) {
            continue;
        }
        out.add_signed(pattern.face_sign(l, p), get(t)?);
    }
    Ok(out)
}

/// `d α_I − RHS(I)`.
pub fn simplex_residual(c: &DgCategory, sigma: &NerveSimplex, s: Seq) -> Result<Morphism, NerveError> {
    let alpha = sigma.get(s).ok_or_else(|| NerveError::MissingCell(format_seq(s)))?;
    Ok(&c.d(alpha) - &condition_rhs(c, sigma, s, SignPattern::CALIBRATED)?)
}

/// Shape and condition checks on every sequence; empty iff `σ ∈ NC(A)_n`.
pub fn validate_simplex(c: &DgCategory, sigma: &NerveSimplex) -> Vec<SimplexViolation> {
    validate_with(c, sigma, SignPattern::CALIBRATED)
}

pub fn validate_with(c: &DgCategory, sigma: &NerveSimplex, pattern: SignPattern) -> Vec<SimplexViolation> {
    let mut out = Vec::new();
    if let Some(&x) = sigma.objects.iter().find(|&&x| x >= c.num_objects()) {
        out.push(SimplexViolation {
            sequence: 0,
            defect: Defect::Shape(format!("object index {x} out of range")),
        });
        return out;
    }
    let seqs = sequences(sigma.n);
    let mut bad_shape = false;
    for &s in &seqs {
        if let Some(defect) = sigma.check_cell(c, s) {
            bad_shape = true;
            out.push(SimplexViolation { sequence: s, defect });
        }
    }
    if bad_shape {
        return out;
    }
    for &s in &seqs {
        let rhs = condition_rhs(c, sigma, s, pattern).expect("complete simplex");
        if c.d(sigma.cell(s)) != rhs {
            out.push(SimplexViolation {
                sequence: s,
                defect: Defect::Residual,
            });
        }
    }
    out
}

/// Every edge admits an equivalence witness; empty iff `σ ∈ NC*(A)_n`.
pub fn validate_star(c: &DgCategory, sigma: &NerveSimplex) -> Vec<SimplexViolation> {
    let mut out = Vec::new();
    for i in 0..sigma.n {
        for j in i + 1..=sigma.n {
            let s = seq_of(&[i, j]);
            let ok = sigma
                .get(s)
                .is_some_and(|a| find_equivalence_witness(c, a).is_ok());
            if !ok {
                out.push(SimplexViolation {
                    sequence: s,
                    defect: Defect::NotEquivalence,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::random_complex_category;
    use crate::sample::rng_from_seed;

    #[test]
    fn sequence_helpers() {
        let s = seq_of(&[0, 2, 3, 5]);
        assert_eq!(edges(s), 3);
        assert_eq!(prefix(s, 1), seq_of(&[0, 2]));
        assert_eq!(suffix(s, 1), seq_of(&[2, 3, 5]));
        assert_eq!(delete(s, 2), seq_of(&[0, 2, 5]));
        assert_eq!((first_vertex(s), last_vertex(s)), (0, 5));
        assert_eq!(parse_seq(&format_seq(s)).unwrap(), s);
        assert!(parse_seq("2,1").is_err());
        assert_eq!(sequences(3).len(), 11);
        assert_eq!(sequences(2), vec![0b011, 0b101, 0b110, 0b111]);
    }

    #[test]
    fn two_simplex_condition() {
        // d α₀₁₂ = α₁₂ α₀₁ − α₀₂
        let c = random_complex_category(1, 3, 8);
        let mut rng = rng_from_seed(2);
        let mut s = NerveSimplex::new(vec![0, 1, 2]).unwrap();
        let a01 = c.random_closed(&mut rng, 0, 1, 0);
        let a12 = c.random_closed(&mut rng, 1, 2, 0);
        let a02 = c.random_closed(&mut rng, 0, 2, 0);
        let a012 = c.random_morphism(&mut rng, 0, 2, -1);
        for (v, m) in [(vec![0, 1], &a01), (vec![1, 2], &a12), (vec![0, 2], &a02), (vec![0, 1, 2], &a012)] {
            s.set_cell(seq_of(&v), m.clone());
        }
        let expected = &(&c.d(&a012) - &c.compose(&a12, &a01)) + &a02;
        assert_eq!(simplex_residual(&c, &s, 0b111).unwrap(), expected);
    }

    #[test]
    fn identity_simplices_are_valid() {
        let c = random_complex_category(3, 2, 6);
        for n in 0..=5 {
            let s = NerveSimplex::identity(&c, 1, n);
            assert!(validate_simplex(&c, &s).is_empty(), "n = {n}");
            assert!(validate_star(&c, &s).is_empty());
            for j in 0..=n {
                let d = s.degeneracy(&c, j).unwrap();
                assert_eq!(d, NerveSimplex::identity(&c, 1, n + 1));
            }
        }
    }

    #[test]
    fn zero_edge_is_not_an_equivalence() {
        let c = random_complex_category(3, 2, 6);
        let mut s = NerveSimplex::identity(&c, 0, 1);
        s.set_cell(0b11, c.zero(0, 0, 0));
        let report = validate_star(&c, &s);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].defect, Defect::NotEquivalence);
        assert!(validate_simplex(&c, &s).is_empty());
    }

    #[test]
    fn face_index_errors() {
        let c = random_complex_category(3, 1, 3);
        let s = NerveSimplex::identity(&c, 0, 2);
        assert!(s.face(3).is_err());
        assert!(s.degeneracy(&c, 3).is_err());
    }
}
