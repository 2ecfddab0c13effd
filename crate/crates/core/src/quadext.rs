//! Formal arithmetic in `Q[sqrt(D)]` for a fixed rational radicand `D`.
//!
//! Closed forms that carry square roots (`sqrt(q)`, `sqrt(s t)`) are
//! evaluated here exactly; their final results are rational, which is
//! checked by [`QuadExtPoly::rational_part`].

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RationalPoly;

/// `a + b * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    radicand: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_zero(), "radicand must be nonzero");
        QuadExt { a, b, radicand }
    }

    pub fn rational(a: BigRational, radicand: &BigRational) -> Self {
        Self::new(a, BigRational::zero(), radicand.clone())
    }

    /// The element `sqrt(radicand)` itself.
    pub fn root(radicand: &BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), radicand.clone())
    }

    pub fn zero(radicand: &BigRational) -> Self {
        Self::rational(BigRational::zero(), radicand)
    }

    pub fn one(radicand: &BigRational) -> Self {
        Self::rational(BigRational::one(), radicand)
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Multiplicative inverse, `(a - b r) / (a^2 - b^2 D)`. Panics on zero or
    /// on a zero divisor (possible only for a perfect-square radicand).
    pub fn inv(&self) -> Self {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.radicand;
        assert!(!norm.is_zero(), "element is not invertible");
        Self::new(&self.a / &norm, -&self.b / &norm, self.radicand.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.radicand), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.radicand.clone())
    }

    /// When the radicand is the square of a rational, fold `b sqrt(D)` into
    /// the rational part.
    pub fn canonicalize(&self) -> Self {
        match rational_sqrt(&self.radicand) {
            Some(root) => Self::new(&self.a + &self.b * root, BigRational::zero(), self.radicand.clone()),
            None => self.clone(),
        }
    }

    fn same_field(&self, other: &QuadExt) {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
    }
}

/// Exact square root of a nonnegative rational, if it has one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

impl Add for &QuadExt {
    type Output = QuadExt;

    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b, self.radicand.clone())
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;

    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b, self.radicand.clone())
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;

    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt::new(
            &self.a * &rhs.a + &self.b * &rhs.b * &self.radicand,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.radicand.clone(),
        )
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;

    fn neg(self) -> QuadExt {
        QuadExt::new(-&self.a, -&self.b, self.radicand.clone())
    }
}

/// Polynomial in one variable with coefficients in `Q[sqrt(D)]`, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExtPoly {
    coeffs: Vec<QuadExt>,
    radicand: BigRational,
}

impl QuadExtPoly {
    pub fn zero(radicand: &BigRational) -> Self {
        QuadExtPoly {
            coeffs: Vec::new(),
            radicand: radicand.clone(),
        }
    }

    pub fn constant(c: QuadExt) -> Self {
        let radicand = c.radicand.clone();
        Self::from_coeffs(vec![c], &radicand)
    }

    pub fn from_coeffs(mut coeffs: Vec<QuadExt>, radicand: &BigRational) -> Self {
        while coeffs.last().is_some_and(QuadExt::is_zero) {
            coeffs.pop();
        }
        QuadExtPoly {
            coeffs,
            radicand: radicand.clone(),
        }
    }

    /// Embeds a rational polynomial.
    pub fn from_rational(p: &RationalPoly, radicand: &BigRational) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| QuadExt::rational(c.clone(), radicand))
            .collect();
        Self::from_coeffs(coeffs, radicand)
    }

    /// The monomial `c * x`.
    pub fn linear(c: QuadExt) -> Self {
        let radicand = c.radicand.clone();
        Self::from_coeffs(vec![QuadExt::zero(&radicand), c], &radicand)
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    fn coeff(&self, i: usize) -> QuadExt {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(&self.radicand))
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect(), &self.radicand)
    }

    /// Splits off the rational part, failing if any coefficient keeps a
    /// `sqrt(D)` component.
    pub fn rational_part(&self) -> Result<RationalPoly> {
        if self.coeffs.iter().any(|c| !c.is_rational()) {
            return Err(Error::IrrationalResidue);
        }
        Ok(RationalPoly::from_coeffs(
            self.coeffs.iter().map(|c| c.a.clone()).collect(),
        ))
    }

    /// The `sqrt(D)` components of every coefficient.
    pub fn irrational_part(&self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| c.b.clone()).collect())
    }
}

impl Add for &QuadExtPoly {
    type Output = QuadExtPoly;

    fn add(self, rhs: &QuadExtPoly) -> QuadExtPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QuadExtPoly::from_coeffs(
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
            &self.radicand,
        )
    }
}

impl Sub for &QuadExtPoly {
    type Output = QuadExtPoly;

    fn sub(self, rhs: &QuadExtPoly) -> QuadExtPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QuadExtPoly::from_coeffs(
            (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect(),
            &self.radicand,
        )
    }
}

impl Mul for &QuadExtPoly {
    type Output = QuadExtPoly;

    fn mul(self, rhs: &QuadExtPoly) -> QuadExtPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return QuadExtPoly::zero(&self.radicand);
        }
        let mut out = vec![QuadExt::zero(&self.radicand); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QuadExtPoly::from_coeffs(out, &self.radicand)
    }
}

/// `U_n(c x)` for a scalar `c` in `Q[sqrt(D)]`, any integer `n`.
pub fn chebyshev_u_scaled(n: i64, c: &QuadExt) -> QuadExtPoly {
    let radicand = c.radicand().clone();
    if n == -1 {
        return QuadExtPoly::zero(&radicand);
    }
    if n < -1 {
        let p = chebyshev_u_scaled(-n - 2, c);
        return p.scale(&(-&QuadExt::one(&radicand)));
    }
    let two_cx = QuadExtPoly::linear(c.scale(&BigRational::from_integer(2.into())));
    let mut prev = QuadExtPoly::constant(QuadExt::one(&radicand));
    if n == 0 {
        return prev;
    }
    let mut cur = two_cx.clone();
    for _ in 1..n {
        let next = &(&two_cx * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}
