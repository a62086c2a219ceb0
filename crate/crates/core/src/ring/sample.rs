//! Seeded sampling of small rationals and of rational points on the quadric.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EvalPoint, Rational};

/// Numerators are drawn from `[-SAMPLE_BOUND, SAMPLE_BOUND]` and denominators
/// from `[1, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 10;

pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let den = self.rng.gen_range(1..=SAMPLE_BOUND);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

/// Draws `x1..xn` nonzero and `y2..yn` freely, then solves for `y1` so that
/// the point lies on the quadric. Deterministic in `seed`.
pub fn sample_quadric_point(n: usize, seed: u64) -> EvalPoint {
    assert!(n >= 1, "quadric points need n >= 1");
    let mut s = RationalSampler::new(seed);
    let xs: Vec<Rational> = (0..n).map(|_| s.nonzero_rational()).collect();
    let mut ys: Vec<Rational> = vec![Rational::zero(); n];
    for y in ys.iter_mut().skip(1) {
        *y = s.rational();
    }
    let rest: Rational = xs.iter().zip(&ys).skip(1).map(|(a, b)| a * b).sum();
    ys[0] = (Rational::from_integer(BigInt::from(1)) - rest) / &xs[0];
    EvalPoint::new(xs, ys).expect("constructed on the quadric")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_points_are_inverse_pairs() {
        for seed in 0..10 {
            let p = sample_quadric_point(1, seed);
            assert_eq!(&p.xs()[0] * &p.ys()[0], Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(sample_quadric_point(3, 42), sample_quadric_point(3, 42));
        assert_ne!(sample_quadric_point(3, 42), sample_quadric_point(3, 43));
    }

    #[test]
    fn hundred_points_on_q7() {
        for seed in 0..100 {
            let p = sample_quadric_point(4, seed);
            let q: Rational = p.xs().iter().zip(p.ys()).map(|(a, b)| a * b).sum();
            assert_eq!(q, Rational::from_integer(1.into()));
        }
    }

    #[test]
    fn bounded_draws() {
        let mut s = RationalSampler::new(7);
        for _ in 0..500 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &BigInt::from(SAMPLE_BOUND).magnitude().clone());
            assert!(r.denom() <= &BigInt::from(SAMPLE_BOUND));
        }
    }
}
