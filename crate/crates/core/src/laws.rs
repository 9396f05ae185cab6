//! Randomized battery of the algebraic identities, with per-law counts.
//!
//! | law | identity |
//! |-----|----------|
//! | `axioms` | `check_axioms` of the category is empty |
//! | `cochain d^2 (n)` | `d(d η) = 0` on random cochains between sampled simplices |
//! | `cochain leibniz` | `d(η∘φ) = d(η)∘φ + (−1)^{|η|} η∘d(φ)` |
//! | `cochain associativity` | `(η∘φ)∘χ = η∘(φ∘χ)` |
//! | `obstruction` | `d U = 0` and the `V` identity on sampled horns |
//! | `filler` | completed horns validate |

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::dgcat::{sign, DgCategory};
use crate::horn::{compute_obstruction, extract_horn, fill, Sampler};
use crate::nerve::{
    cochain_compose, cochain_compose_mutated, cochain_differential, cochain_differential_mutated, random_cochain,
    validate_simplex, NerveCochain, NerveError, NerveSimplex,
};
use crate::sample::{derive_seed, rng_from_seed, SweepRng};

/// Horn shapes visited by the horn laws, in order.
pub const HORN_GRID: [(usize, usize); 6] = [(2, 0), (3, 0), (3, 1), (3, 2), (3, 3), (4, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawOptions {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    /// Drops the Koszul sign of the cochain convolution; for mutation tests only.
    pub mutate_sign: bool,
}

impl Default for LawOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            max_n: 4,
            mutate_sign: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstFailure {
    pub trial: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCount {
    pub law: String,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<FirstFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub trials: usize,
    pub mutate_sign: bool,
    pub laws: Vec<LawCount>,
}

impl LawReport {
    pub fn failures(&self) -> usize {
        self.laws.iter().map(|l| l.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    pub fn law(&self, name: &str) -> Option<&LawCount> {
        self.laws.iter().find(|l| l.law == name)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "laws: seed {}, {} trials", self.seed, self.trials)?;
        for l in &self.laws {
            write!(f, "  {:<28} {:>5} checked {:>5} failed", l.law, l.checked, l.failed)?;
            if let Some(ff) = &l.first_failure {
                write!(f, "  (first: trial {}, seed {})", ff.trial, ff.seed)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Ops {
    d: fn(&DgCategory, &NerveCochain) -> NerveCochain,
    compose: fn(&DgCategory, &NerveCochain, &NerveCochain) -> Result<NerveCochain, NerveError>,
}

/// Runs every law `trials` times.
pub fn run_laws(c: &DgCategory, opts: &LawOptions) -> LawReport {
    let ops = if opts.mutate_sign {
        Ops {
            d: cochain_differential_mutated,
            compose: cochain_compose_mutated,
        }
    } else {
        Ops {
            d: cochain_differential,
            compose: cochain_compose,
        }
    };
    let mut laws = Vec::new();
    if opts.trials > 0 {
        let ok = c.check_axioms().is_empty();
        laws.push(LawCount {
            law: "axioms".into(),
            checked: 1,
            failed: usize::from(!ok),
            first_failure: (!ok).then_some(FirstFailure { trial: 0, seed: opts.seed }),
        });
        let mut id = 0u64;
        let mut law = |name: String, check: &mut dyn FnMut(&mut SweepRng, usize) -> bool| {
            id += 1;
            let stream = derive_seed(opts.seed, id);
            let mut count = LawCount {
                law: name,
                checked: 0,
                failed: 0,
                first_failure: None,
            };
            for trial in 0..opts.trials {
                let s = derive_seed(stream, trial as u64);
                let mut rng = rng_from_seed(s);
                count.checked += 1;
                if !check(&mut rng, trial) {
                    count.failed += 1;
                    count.first_failure.get_or_insert(FirstFailure { trial, seed: s });
                }
            }
            laws.push(count);
        };
        for n in 1..=opts.max_n {
            law(format!("cochain d^2 (n = {n})"), &mut |rng, _| {
                let eta = random_between(c, rng, n, 2);
                (ops.d)(c, &(ops.d)(c, &eta[0])).is_zero()
            });
        }
        let cycle_n = |trial: usize| 1 + trial % opts.max_n.max(1);
        law("cochain leibniz".into(), &mut |rng, trial| {
            let ch = random_between(c, rng, cycle_n(trial), 3);
            let (phi, eta) = (&ch[0], &ch[1]);
            let lhs = (ops.d)(c, &(ops.compose)(c, eta, phi).expect("composable"));
            let a = (ops.compose)(c, &(ops.d)(c, eta), phi).expect("composable");
            let b = (ops.compose)(c, eta, &(ops.d)(c, phi)).expect("composable");
            lhs == a.add_signed(sign(eta.degree), &b)
        });
        law("cochain associativity".into(), &mut |rng, trial| {
            let ch = random_between(c, rng, cycle_n(trial), 4);
            let (chi, phi, eta) = (&ch[0], &ch[1], &ch[2]);
            let left = (ops.compose)(c, &(ops.compose)(c, eta, phi).unwrap(), chi).unwrap();
            let right = (ops.compose)(c, eta, &(ops.compose)(c, phi, chi).unwrap()).unwrap();
            left == right
        });
        law("obstruction".into(), &mut |rng, trial| {
            let (n, k) = HORN_GRID[trial % HORN_GRID.len()];
            let h = extract_horn(&Sampler::new(c, true).simplex(rng, n), k).expect("horn");
            compute_obstruction(c, &h).is_ok_and(|ob| ob.verify(c, &h))
        });
        law("filler".into(), &mut |rng, trial| {
            let (n, k) = HORN_GRID[trial % HORN_GRID.len()];
            let h = extract_horn(&Sampler::new(c, true).simplex(rng, n), k).expect("horn");
            fill(c, &h).is_ok_and(|f| validate_simplex(c, &f.complete(&h)).is_empty())
        });
    }
    LawReport {
        seed: opts.seed,
        trials: opts.trials,
        mutate_sign: opts.mutate_sign,
        laws,
    }
}

/// `count − 1` composable random cochains `F₀ → F₁ → ⋯` between sampled
/// `n`-simplices, with random degrees in `−1..=1`.
fn random_between(c: &DgCategory, rng: &mut SweepRng, n: usize, count: usize) -> Vec<NerveCochain> {
    use rand::Rng;
    let mut sampler = Sampler::new(c, false);
    let simplices: Vec<Arc<NerveSimplex>> = (0..count).map(|_| Arc::new(sampler.simplex(rng, n))).collect();
    simplices
        .windows(2)
        .map(|w| {
            let r = rng.gen_range(-1..=1);
            random_cochain(rng, c, w[0].clone(), w[1].clone(), r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complex_a, exterior};

    #[test]
    fn laws_hold_on_fixtures() {
        for c in [complex_a(), exterior()] {
            let r = run_laws(
                &c,
                &LawOptions {
                    trials: 8,
                    ..LawOptions::default()
                },
            );
            assert!(r.ok(), "{r}");
            assert_eq!(r.laws.len(), 1 + 4 + 4);
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        let r = run_laws(
            &exterior(),
            &LawOptions {
                trials: 0,
                ..LawOptions::default()
            },
        );
        assert!(r.laws.is_empty());
        assert!(r.ok());
    }

    #[test]
    fn sign_mutation_breaks_leibniz() {
        let r = run_laws(
            &complex_a(),
            &LawOptions {
                trials: 12,
                mutate_sign: true,
                ..LawOptions::default()
            },
        );
        assert!(r.law("cochain leibniz").unwrap().failed > 0, "{r}");
    }

    #[test]
    fn reports_are_reproducible() {
        let opts = LawOptions {
            seed: 5,
            trials: 4,
            ..LawOptions::default()
        };
        assert_eq!(run_laws(&complex_a(), &opts), run_laws(&complex_a(), &opts));
    }
}
