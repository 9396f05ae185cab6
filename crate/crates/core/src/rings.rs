//! Exact scalars: the rational field and square-zero extensions `B = k ⊕ I`.
//!
//! A [`RingElement`] is a pair `(body, ideal)` where `body` is the residue
//! class in `k = ℚ` and `ideal` holds the coefficients of the basis
//! `ε₁, …, ε_m` of the ideal `I`. All products `εᵢ·εⱼ` vanish.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring mismatch: ideal rank {left} vs {right}")]
    Mismatch { left: usize, right: usize },
    #[error("element with zero residue is not a unit")]
    NotAUnit,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Builds a rational from a pair of machine integers.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let err = || RingError::Parse(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err()),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().map_err(|_| err())?;
            let q = q.trim().parse::<BigInt>().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `B = k ⊕ I` with `I` free of rank `ideal_rank` and `I² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SquareZeroRing {
    pub ideal_rank: usize,
}

impl SquareZeroRing {
    pub const RATIONALS: SquareZeroRing = SquareZeroRing { ideal_rank: 0 };

    pub fn new(ideal_rank: usize) -> Self {
        Self { ideal_rank }
    }

    /// The residue field `B/I`.
    pub fn residue(&self) -> SquareZeroRing {
        Self::RATIONALS
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            body: Rational::zero(),
            ideal: vec![Rational::zero(); self.ideal_rank],
        }
    }

    pub fn one(&self) -> RingElement {
        self.scalar(Rational::one())
    }

    pub fn scalar(&self, body: Rational) -> RingElement {
        RingElement {
            body,
            ideal: vec![Rational::zero(); self.ideal_rank],
        }
    }

    pub fn int(&self, n: i64) -> RingElement {
        self.scalar(rat_int(n))
    }

    /// The basis element `ε_i` (zero based).
    pub fn epsilon(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        e.ideal[i] = Rational::one();
        e
    }

    pub fn element(&self, body: Rational, ideal: Vec<Rational>) -> Result<RingElement, RingError> {
        if ideal.len() != self.ideal_rank {
            return Err(RingError::Mismatch {
                left: self.ideal_rank,
                right: ideal.len(),
            });
        }
        Ok(RingElement { body, ideal })
    }

    /// Base change along `k → B`: keeps the residue, zero ideal part.
    pub fn coerce(&self, x: &RingElement) -> RingElement {
        self.scalar(x.body.clone())
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.ideal.len() == self.ideal_rank
    }
}

impl fmt::Display for SquareZeroRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ideal_rank {
            0 => write!(f, "Q"),
            1 => write!(f, "Q[e]/(e^2)"),
            m => write!(f, "Q[e1..e{m}]/(e_i e_j)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub body: Rational,
    pub ideal: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked ring arithmetic. `Neg` ignores `y`.
pub fn arith(x: &RingElement, y: &RingElement, op: ArithOp) -> Result<RingElement, RingError> {
    if op != ArithOp::Neg && x.ideal.len() != y.ideal.len() {
        return Err(RingError::Mismatch {
            left: x.ideal.len(),
            right: y.ideal.len(),
        });
    }
    Ok(match op {
        ArithOp::Add => x.add_unchecked(y),
        ArithOp::Sub => x.sub_unchecked(y),
        ArithOp::Mul => x.mul_unchecked(y),
        ArithOp::Neg => x.neg_ref(),
    })
}

/// The residue of `x` in `B/I`.
pub fn reduce_mod_ideal(x: &RingElement) -> Rational {
    x.body.clone()
}

/// `(b + v)⁻¹ = b⁻¹ − b⁻² v`.
pub fn invert(x: &RingElement) -> Result<RingElement, RingError> {
    if x.body.is_zero() {
        return Err(RingError::NotAUnit);
    }
    let inv = x.body.recip();
    let inv2 = &inv * &inv;
    Ok(RingElement {
        ideal: x.ideal.iter().map(|v| -(&inv2 * v)).collect(),
        body: inv,
    })
}

impl RingElement {
    pub fn rank(&self) -> usize {
        self.ideal.len()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.ideal.iter().all(Zero::is_zero)
    }

    /// True when the element lies in `I`.
    pub fn in_ideal(&self) -> bool {
        self.body.is_zero()
    }

    pub fn reduce(&self) -> RingElement {
        RingElement {
            body: self.body.clone(),
            ideal: Vec::new(),
        }
    }

    pub fn neg_ref(&self) -> RingElement {
        RingElement {
            body: -&self.body,
            ideal: self.ideal.iter().map(|v| -v).collect(),
        }
    }

    pub fn signed(&self, sign: i32) -> RingElement {
        if sign >= 0 {
            self.clone()
        } else {
            self.neg_ref()
        }
    }

    fn check(&self, other: &RingElement) {
        assert_eq!(
            self.ideal.len(),
            other.ideal.len(),
            "ring mismatch between operands"
        );
    }

    fn add_unchecked(&self, y: &RingElement) -> RingElement {
        RingElement {
            body: &self.body + &y.body,
            ideal: self.ideal.iter().zip(&y.ideal).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub_unchecked(&self, y: &RingElement) -> RingElement {
        RingElement {
            body: &self.body - &y.body,
            ideal: self.ideal.iter().zip(&y.ideal).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_unchecked(&self, y: &RingElement) -> RingElement {
        let ideal = if self.body.is_zero() && y.body.is_zero() {
            vec![Rational::zero(); self.ideal.len()]
        } else {
            self.ideal
                .iter()
                .zip(&y.ideal)
                .map(|(a, b)| &self.body * b + &y.body * a)
                .collect()
        };
        RingElement {
            body: &self.body * &y.body,
            ideal,
        }
    }

    /// `self += a * b` without intermediate allocation of the product body.
    pub fn add_product(&mut self, a: &RingElement, b: &RingElement) {
        self.check(a);
        self.check(b);
        if a.is_zero() || b.is_zero() {
            return;
        }
        for ((s, ai), bi) in self.ideal.iter_mut().zip(&a.ideal).zip(&b.ideal) {
            if !b.body.is_zero() && !ai.is_zero() {
                *s += &b.body * ai;
            }
            if !a.body.is_zero() && !bi.is_zero() {
                *s += &a.body * bi;
            }
        }
        if !a.body.is_zero() && !b.body.is_zero() {
            self.body += &a.body * &b.body;
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.body))?;
        for (i, v) in self.ideal.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let sign = if v.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}e{}", format_rational(&v.abs()), i + 1)?;
        }
        Ok(())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.check(rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.check(rhs);
        self.sub_unchecked(rhs)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.check(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        self.check(rhs);
        self.body += &rhs.body;
        for (a, b) in self.ideal.iter_mut().zip(&rhs.ideal) {
            *a += b;
        }
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        self.check(rhs);
        self.body -= &rhs.body;
        for (a, b) in self.ideal.iter_mut().zip(&rhs.ideal) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(body: i64, ideal: &[i64]) -> RingElement {
        RingElement {
            body: rat_int(body),
            ideal: ideal.iter().map(|&v| rat_int(v)).collect(),
        }
    }

    #[test]
    fn square_zero_product() {
        // (1 + 2e)(3 + e) = 3 + 7e
        assert_eq!(&el(1, &[2]) * &el(3, &[1]), el(3, &[7]));
        assert!((&el(1, &[2]) * &SquareZeroRing::new(1).zero()).is_zero());
    }

    /// Multiplication in k[t]/(t²) computed as full polynomial product, then truncated.
    fn truncated_poly_mul(x: [Rational; 2], y: [Rational; 2]) -> [Rational; 2] {
        let mut full = vec![Rational::zero(); 3];
        for i in 0..2 {
            for j in 0..2 {
                full[i + j] += &x[i] * &y[j];
            }
        }
        [full[0].clone(), full[1].clone()]
    }

    #[test]
    fn matches_truncated_polynomials() {
        let vals = [-3, -1, 0, 2, 5];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        let p = &el(a, &[b]) * &el(c, &[d]);
                        let q = truncated_poly_mul([rat_int(a), rat_int(b)], [rat_int(c), rat_int(d)]);
                        assert_eq!(p.body, q[0]);
                        assert_eq!(p.ideal[0], q[1]);
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_ideal(&el(5, &[3])), rat_int(5));
        assert_eq!(reduce_mod_ideal(&SquareZeroRing::new(2).one()), rat_int(1));
    }

    #[test]
    fn inverses() {
        assert_eq!(invert(&el(1, &[1])).unwrap(), el(1, &[-1]));
        assert_eq!(invert(&el(2, &[])).unwrap().body, rational(1, 2));
        let x = el(3, &[2]);
        assert_eq!(&invert(&x).unwrap() * &x, SquareZeroRing::new(1).one());
        assert_eq!(invert(&el(0, &[4])), Err(RingError::NotAUnit));
    }

    #[test]
    fn mismatch_is_an_error() {
        let r = arith(&el(1, &[1]), &el(1, &[1, 2]), ArithOp::Add);
        assert_eq!(r, Err(RingError::Mismatch { left: 1, right: 2 }));
        assert!(arith(&el(1, &[1]), &el(1, &[1, 2]), ArithOp::Neg).is_ok());
    }

    #[test]
    fn rational_strings() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn arb_el(m: usize) -> impl Strategy<Value = RingElement> {
        (
            (-6i64..6, 1i64..4),
            proptest::collection::vec((-6i64..6, 1i64..4), m),
        )
            .prop_map(|((p, q), ideal)| RingElement {
                body: rational(p, q),
                ideal: ideal.into_iter().map(|(p, q)| rational(p, q)).collect(),
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_el(2), y in arb_el(2), z in arb_el(2)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
        }

        #[test]
        fn ideal_squares_to_zero(x in arb_el(2), y in arb_el(2)) {
            let mut x = x;
            let mut y = y;
            x.body = Rational::zero();
            y.body = Rational::zero();
            prop_assert!((&x * &y).is_zero());
        }

        #[test]
        fn reduction_is_a_ring_map(x in arb_el(1), y in arb_el(1)) {
            prop_assert_eq!(reduce_mod_ideal(&(&x * &y)), reduce_mod_ideal(&x) * reduce_mod_ideal(&y));
            prop_assert_eq!(reduce_mod_ideal(&(&x + &y)), reduce_mod_ideal(&x) + reduce_mod_ideal(&y));
        }

        #[test]
        fn add_product_agrees(s in arb_el(2), x in arb_el(2), y in arb_el(2)) {
            let mut acc = s.clone();
            acc.add_product(&x, &y);
            prop_assert_eq!(acc, &s + &(&x * &y));
        }
    }
}
