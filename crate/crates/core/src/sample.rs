//! Small random scalars and seed derivation for reproducible sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rings::{rat_int, rational, Rational, RingElement, SquareZeroRing};

pub type SweepRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 step; used to derive independent per-trial seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A rational with small numerator and denominator; zero about a quarter of the time.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.25) {
        return rat_int(0);
    }
    let num = rng.gen_range(-3..=3);
    let den = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(2..=3) };
    rational(num, den)
}

pub fn small_integer<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat_int(rng.gen_range(-2..=2))
}

pub fn small_element<R: Rng + ?Sized>(rng: &mut R, ring: SquareZeroRing) -> RingElement {
    let mut x = ring.scalar(small_rational(rng));
    for v in x.ideal.iter_mut() {
        *v = small_rational(rng);
    }
    x
}

/// An element of the ideal `I`.
pub fn small_ideal_element<R: Rng + ?Sized>(rng: &mut R, ring: SquareZeroRing) -> RingElement {
    let mut x = ring.zero();
    for v in x.ideal.iter_mut() {
        *v = small_rational(rng);
    }
    x
}
