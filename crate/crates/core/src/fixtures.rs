//! Named dg-categories shared by the tests, the acceptance suite and the CLI.
//!
//! | name        | objects | description |
//! |-------------|---------|-------------|
//! | `A`         | 3 | `ℚ`, `ℚ ⊕ cone` in degrees −1, 0 and 0, 1; total dimension 7 |
//! | `B`         | 2 | `ℚ ⊕ ℚ[−1]` plus a cone, twice; total dimension 8 |
//! | `exterior`  | 1 | `Λ[e]`, `|e| = −1`, `d = 0` |
//! | `twisted1`  | 4 | `A ⊗ ℚ[ε]/ε²` twisted by random Maurer-Cartan elements |
//! | `twisted2`  | 4 | the same over `ℚ[ε₁, ε₂]/(ε₁, ε₂)²` |

use std::collections::BTreeMap;

use crate::dgcat::{assemble_complex, make_complex_category, CompEntry, DgCategory};
use crate::glin::{GradedMap, GradedModule};
use crate::mc::{random_mc_element, tensor_with_ring, twist, MCElement, TwistedDgCategory};
use crate::rings::SquareZeroRing;
use crate::sample::rng_from_seed;

pub const FIXTURE_NAMES: [&str; 5] = ["A", "B", "exterior", "twisted1", "twisted2"];

/// Three quasi-isomorphic complexes with cohomology `ℚ` in degree 0.
pub fn complex_a() -> DgCategory {
    let mut rng = rng_from_seed(0xA);
    let complexes = [
        assemble_complex(&mut rng, &[0], &[]),
        assemble_complex(&mut rng, &[0], &[-1]),
        assemble_complex(&mut rng, &[0], &[0]),
    ];
    make_complex_category(&complexes).expect("fixture A")
}

/// Two complexes with cohomology `ℚ` in degrees 0 and 1.
pub fn complex_b() -> DgCategory {
    let mut rng = rng_from_seed(0xB);
    let complexes = [
        assemble_complex(&mut rng, &[0, 1], &[-1]),
        assemble_complex(&mut rng, &[1, 0], &[0]),
    ];
    make_complex_category(&complexes).expect("fixture B")
}

/// The exterior algebra on one generator of degree −1 with zero differential.
pub fn exterior() -> DgCategory {
    let ring = SquareZeroRing::RATIONALS;
    let module = GradedModule::new([(-1, 1), (0, 1)]);
    let entry = CompEntry {
        left: 0,
        right: 0,
        out: 0,
        coeff: ring.one(),
    };
    let comp = BTreeMap::from([
        ((0, 0, 0, 0, 0), vec![entry.clone()]),
        ((0, 0, 0, 0, -1), vec![entry.clone()]),
        ((0, 0, 0, -1, 0), vec![entry]),
    ]);
    DgCategory::new(
        ring,
        vec!["P".into()],
        vec![vec![module.clone()]],
        vec![vec![GradedMap::zero(ring, 1, module.clone(), module)]],
        comp,
        vec![vec![ring.one()]],
    )
    .expect("exterior algebra")
}

/// `A ⊗ ℚ[ε₁, …, ε_m]` with one random MC object over each object of `A`,
/// plus the untwisted first object.
pub fn twisted(m: usize) -> TwistedDgCategory {
    let base = tensor_with_ring(&complex_a(), SquareZeroRing::new(m));
    let mut rng = rng_from_seed(0x7E15 + m as u64);
    let mut objects: Vec<MCElement> = (0..base.num_objects())
        .map(|x| random_mc_element(&mut rng, &base, x, format!("{}η", base.label(x))))
        .collect();
    objects.push(MCElement::zero(&base, 0));
    twist(&base, objects).expect("random MC elements")
}

/// The fixture called `name`.
pub fn fixture(name: &str) -> Option<DgCategory> {
    match name {
        "A" => Some(complex_a()),
        "B" => Some(complex_b()),
        "exterior" => Some(exterior()),
        "twisted1" => Some(twisted(1).category),
        "twisted2" => Some(twisted(2).category),
        _ => None,
    }
}

pub fn all_fixtures() -> Vec<(&'static str, DgCategory)> {
    FIXTURE_NAMES.iter().map(|&n| (n, fixture(n).expect("named fixture"))).collect()
}
