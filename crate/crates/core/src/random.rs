//! Seeded random rational test data.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::function::TreeFunction;
use crate::tree::TreeBall;

/// Deterministic source of small random rationals: numerators uniform in
/// `[-9, 9]`, denominators in `{1, 2, 3}`.
#[derive(Debug, Clone)]
pub struct RandomRationals {
    rng: ChaCha8Rng,
}

impl RandomRationals {
    pub fn new(seed: u64) -> Self {
        RandomRationals {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let n: i64 = self.rng.random_range(-9..=9);
        let d: i64 = self.rng.random_range(1..=3);
        BigRational::new(n.into(), d.into())
    }

    /// Like [`rational`](Self::rational) but never zero.
    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let x = self.rational();
            if x != BigRational::from_integer(0.into()) {
                return x;
            }
        }
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }

    pub fn function(&mut self, ball: &Arc<TreeBall>, domain_radius: usize) -> Result<TreeFunction> {
        TreeFunction::from_fn(ball.clone(), domain_radius, |_| self.rational())
    }
}
