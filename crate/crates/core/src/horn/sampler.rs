//! Random simplices built by repeated inner filling, and the horn sweep.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{extract_horn, fill, fill_inner, fill_inner_with, lift_filler, lift_from, Filler, HornData, HornError};
use crate::dgcat::{find_equivalence_witness, reset_witness_calls, witness_calls, DgCategory, Morphism};
use crate::mc::tensor_with_ring;
use crate::nerve::{full_seq, seq_of, sequences, validate_simplex, validate_star, vertices, NerveSimplex, Seq};
use crate::rings::SquareZeroRing;
use crate::sample::{derive_seed, rng_from_seed, SweepRng};

/// Draws valid simplices of `NC(A)` or, with `star`, of `NC*(A)`.
///
/// Spine edges `(t−1, t)` are random closed degree 0 maps (witnessed when
/// `star`). Every other cell with last vertex `t` comes from a randomized
/// inner fill of the horn on `J ∪ {t−1, t}`, so all edges are composites of
/// spine edges up to homotopy.
pub struct Sampler<'a> {
    c: &'a DgCategory,
    star: bool,
}

const EDGE_ATTEMPTS: usize = 4;

impl<'a> Sampler<'a> {
    pub fn new(c: &'a DgCategory, star: bool) -> Self {
        Self { c, star }
    }

    pub fn simplex<R: Rng + ?Sized>(&mut self, rng: &mut R, n: usize) -> NerveSimplex {
        let c = self.c;
        let all: Vec<usize> = (0..c.num_objects()).collect();
        let mut objects = vec![*all.choose(rng).expect("a category with objects")];
        let mut spine = Vec::with_capacity(n);
        for _ in 0..n {
            let x = *objects.last().unwrap();
            let (y, e) = self.spine_edge(rng, x, &all);
            objects.push(y);
            spine.push(e);
        }
        let mut sigma = NerveSimplex::new(objects).expect("dimension");
        for (i, e) in spine.into_iter().enumerate() {
            sigma.set_cell(seq_of(&[i, i + 1]), e);
        }
        for t in 2..=n {
            let mut subsets: Vec<Seq> = (1..1u32 << (t - 1)).collect();
            subsets.sort_by_key(|j| (j.count_ones(), *j));
            for j in subsets {
                self.fill_step(rng, &mut sigma, j | (1 << (t - 1)) | (1 << t));
            }
        }
        sigma
    }

    pub fn horn<R: Rng + ?Sized>(&mut self, rng: &mut R, n: usize, k: usize) -> Result<HornData, HornError> {
        extract_horn(&self.simplex(rng, n), k)
    }

    fn spine_edge<R: Rng + ?Sized>(&self, rng: &mut R, x: usize, all: &[usize]) -> (usize, Morphism) {
        let c = self.c;
        for _ in 0..EDGE_ATTEMPTS {
            let y = *all.choose(rng).unwrap();
            let e = c.random_closed(rng, x, y, 0);
            if !self.star || find_equivalence_witness(c, &e).is_ok() {
                return (y, e);
            }
        }
        let xi = c.random_morphism(rng, x, x, -1);
        (x, &c.unit(x) + &c.d(&xi))
    }

    /// Fills the cells `s` and `s ∖ {t−1}` for `s = J ∪ {t−1, t}`.
    fn fill_step<R: Rng + ?Sized>(&self, rng: &mut R, sigma: &mut NerveSimplex, s: Seq) {
        let verts = vertices(s);
        let m = verts.len() - 1;
        let global = |local: Seq| seq_of(&vertices(local).into_iter().map(|i| verts[i]).collect::<Vec<_>>());
        let mut local = NerveSimplex::new(verts.iter().map(|&v| sigma.objects[v]).collect()).expect("dimension");
        let top = full_seq(m);
        let face = top & !(1 << (m - 1));
        for q in sequences(m) {
            if q != top && q != face {
                local.set_cell(q, sigma.cell(global(q)).clone());
            }
        }
        let h = HornData::new(local, m - 1).expect("horn cells present");
        let (x, y, d) = h.simplex.cell_shape(top);
        let xi = self.c.random_morphism(rng, x, y, d);
        let f = fill_inner_with(self.c, &h, &xi).expect("sampled horns are compatible");
        for (q, cell) in f.cells {
            sigma.set_cell(global(q), cell);
        }
    }
}

/// One failed trial of [`check_gp`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpFailure {
    pub trial: usize,
    pub seed: u64,
    pub stage: String,
    pub reason: String,
}

/// Outcome of a horn-filling sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub fills: usize,
    pub lifts: usize,
    pub plain_fills: usize,
    pub failures: Vec<GpFailure>,
}

impl GpReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Λ^{}_{}: {}/{} trials passed ({} fills, {} lifts, {} witness-free fills), seed {}",
            self.k, self.n, self.passed, self.trials, self.fills, self.lifts, self.plain_fills, self.seed
        )?;
        for e in &self.failures {
            writeln!(f, "  trial {} (seed {}): {}: {}", e.trial, e.seed, e.stage, e.reason)?;
        }
        Ok(())
    }
}

/// Fills random horns `Λᵏₙ`, validates the results, and runs the
/// square-zero lift round trip over `ℚ[ε]/ε²` (or over the ring of `c` if it
/// already has an ideal). Inner horns are also filled in `NC(A)` with the
/// witness counter checked to stay at zero.
pub fn check_gp(c: &DgCategory, n: usize, k: usize, trials: usize, seed: u64) -> Result<GpReport, HornError> {
    if n < 2 {
        return Err(HornError::Domain(format!("horn filling starts at n = 2, got n = {n}")));
    }
    if k > n {
        return Err(HornError::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let lifted_category = if c.ring().ideal_rank > 0 {
        c.clone()
    } else {
        tensor_with_ring(c, SquareZeroRing::new(1))
    };
    let reduced = lifted_category.reduce();
    let mut report = GpReport {
        n,
        k,
        seed,
        trials,
        passed: 0,
        fills: 0,
        lifts: 0,
        plain_fills: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let s = derive_seed(seed, trial as u64);
        let mut rng = rng_from_seed(s);
        let fail = |stage: &str, reason: String| GpFailure {
            trial,
            seed: s,
            stage: stage.into(),
            reason,
        };
        let outcome = (|| {
            fill_trial(c, n, k, &mut rng).map_err(|r| fail("fill", r))?;
            report.fills += 1;
            lift_trial(&lifted_category, &reduced, n, k, &mut rng).map_err(|r| fail("lift", r))?;
            report.lifts += 1;
            if 0 < k && k < n {
                plain_trial(c, n, k, &mut rng).map_err(|r| fail("plain", r))?;
                report.plain_fills += 1;
            }
            Ok::<(), GpFailure>(())
        })();
        match outcome {
            Ok(()) => report.passed += 1,
            Err(e) => report.failures.push(e),
        }
    }
    Ok(report)
}

fn complete_and_validate(c: &DgCategory, h: &HornData, f: &Filler) -> Result<NerveSimplex, String> {
    let done = f.complete(h);
    let v = validate_simplex(c, &done);
    if v.is_empty() {
        Ok(done)
    } else {
        Err(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    }
}

fn fill_trial(c: &DgCategory, n: usize, k: usize, rng: &mut SweepRng) -> Result<(), String> {
    let h = Sampler::new(c, true).horn(rng, n, k).map_err(|e| e.to_string())?;
    let f = fill(c, &h).map_err(|e| e.to_string())?;
    let done = complete_and_validate(c, &h, &f)?;
    if n == 2 && (k == 0 || k == n) && !validate_star(c, &done).is_empty() {
        return Err("the new edge is not an equivalence".into());
    }
    Ok(())
}

fn lift_trial(b: &DgCategory, reduced: &DgCategory, n: usize, k: usize, rng: &mut SweepRng) -> Result<(), String> {
    let h = Sampler::new(b, true).horn(rng, n, k).map_err(|e| e.to_string())?;
    let base = fill(reduced, &h.reduce()).map_err(|e| e.to_string())?;
    let zero_lift = lift_filler(b, &h, &base).map_err(|e| e.to_string())?;
    let approx = zero_lift.filler.perturb_ideal(rng, b.ring());
    let lifted = lift_from(b, &h, &approx).map_err(|e| e.to_string())?;
    if !lifted.correction.verify(b, &h) {
        return Err("correction identities fail".into());
    }
    complete_and_validate(b, &h, &lifted.filler)?;
    if lifted.filler.reduce() != base {
        return Err("lifted filler does not reduce to the filler mod I".into());
    }
    Ok(())
}

fn plain_trial(c: &DgCategory, n: usize, k: usize, rng: &mut SweepRng) -> Result<(), String> {
    let h = Sampler::new(c, false).horn(rng, n, k).map_err(|e| e.to_string())?;
    reset_witness_calls();
    let f = fill_inner(c, &h).map_err(|e| e.to_string())?;
    let calls = witness_calls();
    if calls != 0 {
        return Err(format!("inner fill consulted {calls} witnesses"));
    }
    complete_and_validate(c, &h, &f).map(|_| ())
}
