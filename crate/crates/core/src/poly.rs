//! Univariate polynomials with arbitrary-precision rational coefficients.
//!
//! Includes the Chebyshev families `T_n`, `U_n` (extended to all integer
//! indices), the Geronimus family `p_n` expressing sphere sums through
//! `Sigma_1`, and Euclidean gcd / Bezout computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients lowest degree first, never with a trailing zero. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of `mu_1` applications needed to apply this polynomial; zero for
    /// the zero polynomial.
    pub fn shrink(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division `self = quotient * divisor + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &RationalPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Runs the three-term recurrence `P_{j+1} = 2x P_j - P_{j-1}` upward from
/// `P_0`, `P_1` and returns `P_n`.
fn three_term(p0: RationalPoly, p1: RationalPoly, n: usize) -> RationalPoly {
    if n == 0 {
        return p0;
    }
    let two_x = RationalPoly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the second kind, `U_{-1} = 0` and
/// `U_{-n} = -U_{n-2}` for `n >= 2`.
pub fn chebyshev_u(n: i64) -> RationalPoly {
    match n {
        -1 => RationalPoly::zero(),
        n if n < -1 => -&chebyshev_u(-n - 2),
        n => three_term(RationalPoly::one(), RationalPoly::from_ints(&[0, 2]), n as usize),
    }
}

/// Chebyshev polynomial of the first kind, `T_{-n} = T_n`.
pub fn chebyshev_t(n: i64) -> RationalPoly {
    three_term(RationalPoly::one(), RationalPoly::x(), n.unsigned_abs() as usize)
}

/// Degree of `U_n`, or `None` when `U_n` is the zero polynomial (`n = -1`).
pub fn chebyshev_u_degree(n: i64) -> Option<usize> {
    match n {
        -1 => None,
        n if n < -1 => Some((-n - 2) as usize),
        n => Some(n as usize),
    }
}

/// Geronimus polynomials: `p_0 = 1`, `p_1 = x`, `p_2 = x^2 - (q+1)` and
/// `p_{n+1} = x p_n - q p_{n-1}` for `n >= 2`.
pub fn geronimus_p(n: usize, q: u32) -> RationalPoly {
    let q = int(q as i64);
    let p0 = RationalPoly::one();
    let p1 = RationalPoly::x();
    if n == 0 {
        return p0;
    }
    if n == 1 {
        return p1;
    }
    let mut prev = p1;
    let mut cur = RationalPoly::from_coeffs(vec![-(&q + int(1)), int(0), int(1)]);
    for _ in 2..n {
        let next = &cur.shift(1) - &prev.scale(&q);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &RationalPoly, b: &RationalPoly) -> Result<RationalPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1)?;
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Result of the extended Euclidean algorithm: `a * s + b * t = gcd`, with
/// `gcd` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub s: RationalPoly,
    pub t: RationalPoly,
    pub gcd: RationalPoly,
}

pub fn bezout(a: &RationalPoly, b: &RationalPoly) -> Result<Bezout> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (RationalPoly::one(), RationalPoly::zero());
    let (mut t0, mut t1) = (RationalPoly::zero(), RationalPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quot * &s1);
        let t2 = &t0 - &(&quot * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc_inv = r0.leading().expect("gcd of nonzero input is nonzero").recip();
    Ok(Bezout {
        s: s0.scale(&lc_inv),
        t: t0.scale(&lc_inv),
        gcd: r0.scale(&lc_inv),
    })
}

/// Quotient of an exact division; fails with [`Error::NotDivisible`] when
/// the remainder is nonzero.
pub fn div_exact(a: &RationalPoly, b: &RationalPoly) -> Result<RationalPoly> {
    let (quot, rem) = a.div_rem(b)?;
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::NotDivisible)
    }
}
