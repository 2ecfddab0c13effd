//! Rational-valued functions on a tree ball, tagged with the radius on which
//! their values are valid.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::tree::{TreeBall, Vertex};

/// A function on `B_r(o)` inside an ambient ball `B_R(o)`, `r <= R`.
///
/// Operators shrink `r`: the values of `mu_k f` are only known where the
/// whole sphere of radius `k` lies inside the domain of `f`. Binary
/// arithmetic between functions is carried out on the common (smaller)
/// domain.
#[derive(Debug, Clone)]
pub struct TreeFunction {
    ball: Arc<TreeBall>,
    domain_radius: usize,
    values: Vec<BigRational>,
}

impl PartialEq for TreeFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ball.q() == other.ball.q()
            && self.ball.radius() == other.ball.radius()
            && self.domain_radius == other.domain_radius
            && self.values == other.values
    }
}

impl TreeFunction {
    pub fn new(ball: Arc<TreeBall>, domain_radius: usize, values: Vec<BigRational>) -> Result<Self> {
        if domain_radius > ball.radius() {
            return Err(Error::InsufficientRadius {
                needed: domain_radius,
                available: ball.radius(),
            });
        }
        let expected = ball.ball_len(domain_radius);
        if values.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "function on radius {domain_radius} needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(TreeFunction {
            ball,
            domain_radius,
            values,
        })
    }

    pub fn from_fn(
        ball: Arc<TreeBall>,
        domain_radius: usize,
        mut f: impl FnMut(Vertex) -> BigRational,
    ) -> Result<Self> {
        let n = ball.ball_len(domain_radius.min(ball.radius()));
        let values = (0..n).map(&mut f).collect();
        Self::new(ball, domain_radius, values)
    }

    pub fn constant(ball: Arc<TreeBall>, domain_radius: usize, c: BigRational) -> Result<Self> {
        Self::from_fn(ball, domain_radius, |_| c.clone())
    }

    pub fn zero(ball: Arc<TreeBall>, domain_radius: usize) -> Result<Self> {
        Self::from_fn(ball, domain_radius, |_| BigRational::zero())
    }

    /// Indicator function of a single vertex.
    pub fn delta(ball: Arc<TreeBall>, domain_radius: usize, at: Vertex) -> Result<Self> {
        Self::from_fn(ball, domain_radius, |v| {
            if v == at {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        })
    }

    pub(crate) fn from_parts(ball: Arc<TreeBall>, domain_radius: usize, values: Vec<BigRational>) -> Self {
        debug_assert_eq!(values.len(), ball.ball_len(domain_radius));
        TreeFunction {
            ball,
            domain_radius,
            values,
        }
    }

    pub fn ball(&self) -> &Arc<TreeBall> {
        &self.ball
    }

    pub fn q(&self) -> u32 {
        self.ball.q()
    }

    pub fn domain_radius(&self) -> usize {
        self.domain_radius
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigRational> {
        self.values
    }

    pub fn value(&self, v: Vertex) -> Option<&BigRational> {
        self.values.get(v)
    }

    pub fn set(&mut self, v: Vertex, value: BigRational) -> Result<()> {
        let len = self.values.len();
        let slot = self
            .values
            .get_mut(v)
            .ok_or(Error::InvalidVertex { index: v, len })?;
        *slot = value;
        Ok(())
    }

    /// Same function with its domain cut down to radius `r`.
    pub fn restrict(&self, r: usize) -> Result<Self> {
        if r > self.domain_radius {
            return Err(Error::DomainTooSmall {
                needed: r,
                available: self.domain_radius,
            });
        }
        Ok(TreeFunction {
            ball: self.ball.clone(),
            domain_radius: r,
            values: self.values[..self.ball.ball_len(r)].to_vec(),
        })
    }

    pub fn same_ball(&self, other: &TreeFunction) -> Result<()> {
        if Arc::ptr_eq(&self.ball, &other.ball)
            || (self.ball.q() == other.ball.q() && self.ball.radius() == other.ball.radius())
        {
            Ok(())
        } else {
            Err(Error::BallMismatch {
                q_a: self.ball.q(),
                r_a: self.ball.radius(),
                q_b: other.ball.q(),
                r_b: other.ball.radius(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Number of vertices carrying a nonzero value.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// `max |f(v)|` over the domain (zero for an all-zero function).
    pub fn max_abs(&self) -> BigRational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> TreeFunction {
        TreeFunction {
            ball: self.ball.clone(),
            domain_radius: self.domain_radius,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c * other` on the common domain.
    pub fn add_scaled(&self, c: &BigRational, other: &TreeFunction) -> TreeFunction {
        self.zip_with(other, |a, b| a + c * b)
    }

    fn zip_with(
        &self,
        other: &TreeFunction,
        op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> TreeFunction {
        if let Err(e) = self.same_ball(other) {
            panic!("{e}");
        }
        let r = self.domain_radius.min(other.domain_radius);
        let n = self.ball.ball_len(r);
        let values = self.values[..n]
            .iter()
            .zip(&other.values[..n])
            .map(|(a, b)| op(a, b))
            .collect();
        TreeFunction {
            ball: self.ball.clone(),
            domain_radius: r,
            values,
        }
    }
}

impl Add for &TreeFunction {
    type Output = TreeFunction;

    fn add(self, rhs: &TreeFunction) -> TreeFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TreeFunction {
    type Output = TreeFunction;

    fn sub(self, rhs: &TreeFunction) -> TreeFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TreeFunction {
    type Output = TreeFunction;

    fn neg(self) -> TreeFunction {
        TreeFunction {
            ball: self.ball.clone(),
            domain_radius: self.domain_radius,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl Mul<&TreeFunction> for &BigRational {
    type Output = TreeFunction;

    fn mul(self, rhs: &TreeFunction) -> TreeFunction {
        rhs.scale(self)
    }
}
