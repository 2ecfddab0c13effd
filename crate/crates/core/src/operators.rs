//! Spherical mean value operators and the operator calculus built on them.
//!
//! Every application shrinks the domain radius by the operator's degree:
//! `mu_k` by `k`, a polynomial in `mu_1` by its degree. Inputs whose domain
//! is too small are rejected rather than partially evaluated.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::poly::{chebyshev_u_degree, int, RationalPoly};
use crate::quadext::{chebyshev_u_scaled, QuadExt, QuadExtPoly};
use crate::tree::{sphere_size, TreeBall, Vertex};

/// Sum of rationals that postpones reduction to the end.
struct RationalSum {
    numer: BigInt,
    denom: BigInt,
}

impl RationalSum {
    fn new() -> Self {
        RationalSum {
            numer: BigInt::zero(),
            denom: BigInt::one(),
        }
    }

    fn add(&mut self, x: &BigRational) {
        if x.is_zero() {
            return;
        }
        if *x.denom() == self.denom {
            self.numer += x.numer();
        } else {
            self.numer = &self.numer * x.denom() + x.numer() * &self.denom;
            self.denom *= x.denom();
        }
    }

    fn finish(self) -> BigRational {
        BigRational::new(self.numer, self.denom)
    }
}

fn sphere_sum(ball: &TreeBall, values: &[BigRational], v: Vertex, depth: usize, k: usize) -> BigRational {
    let mut acc = RationalSum::new();
    ball.for_each_sphere_range(v, depth, k, |range| {
        for w in range {
            acc.add(&values[w]);
        }
    });
    acc.finish()
}

fn sphere_size_rat(q: u32, k: usize) -> BigRational {
    let n = sphere_size(q, k).expect("sphere size fits in usize for an existing ball");
    BigRational::from_integer(n.into())
}

fn require(available: usize, needed: usize) -> Result<usize> {
    available
        .checked_sub(needed)
        .ok_or(Error::DomainTooSmall { needed, available })
}

/// `mu_k f`: the average of `f` over the sphere of radius `k` around each
/// vertex.
pub fn mean_value(f: &TreeFunction, k: usize) -> Result<TreeFunction> {
    let out_r = require(f.domain_radius(), k)?;
    if k == 0 {
        return Ok(f.clone());
    }
    let ball = f.ball();
    let norm = sphere_size_rat(ball.q(), k).recip();
    let mut values = Vec::with_capacity(ball.ball_len(out_r));
    for m in 0..=out_r {
        for v in ball.layer(m) {
            values.push(sphere_sum(ball, f.values(), v, m, k) * &norm);
        }
    }
    Ok(TreeFunction::from_parts(ball.clone(), out_r, values))
}

/// `Delta f = mu_1 f - f`.
pub fn laplacian(f: &TreeFunction) -> Result<TreeFunction> {
    Ok(&mean_value(f, 1)? - f)
}

/// `p(mu_1) f`, evaluated Horner-style.
pub fn apply_mu1_poly(p: &RationalPoly, f: &TreeFunction) -> Result<TreeFunction> {
    let Some(n) = p.degree() else {
        return TreeFunction::zero(f.ball().clone(), f.domain_radius());
    };
    require(f.domain_radius(), n)?;
    let coeffs = p.coeffs();
    let mut acc = f.scale(&coeffs[n]);
    for c in coeffs[..n].iter().rev() {
        acc = mean_value(&acc, 1)?;
        if !c.is_zero() {
            acc = acc.add_scaled(c, f);
        }
    }
    Ok(acc)
}

/// `U_n(A) f` for a linear operator `A` of degree `degree`, through the
/// recurrence `y_{j+1} = 2 A y_j - y_{j-1}`.
pub fn chebyshev_u_operator<F>(n: i64, f: &TreeFunction, degree: usize, op: F) -> Result<TreeFunction>
where
    F: Fn(&TreeFunction) -> Result<TreeFunction>,
{
    let Some(steps) = chebyshev_u_degree(n) else {
        return TreeFunction::zero(f.ball().clone(), f.domain_radius());
    };
    require(f.domain_radius(), steps * degree)?;
    let two = int(2);
    let mut prev = f.clone();
    if steps == 0 {
        return Ok(if n < 0 { -&prev } else { prev });
    }
    let mut cur = op(f)?.scale(&two);
    for _ in 1..steps {
        let next = &op(&cur)?.scale(&two) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(if n < 0 { -&cur } else { cur })
}

/// `T_n(A) f` for a linear operator `A` of degree `degree`.
pub fn chebyshev_t_operator<F>(n: i64, f: &TreeFunction, degree: usize, op: F) -> Result<TreeFunction>
where
    F: Fn(&TreeFunction) -> Result<TreeFunction>,
{
    let steps = n.unsigned_abs() as usize;
    require(f.domain_radius(), steps * degree)?;
    if steps == 0 {
        return Ok(f.clone());
    }
    let two = int(2);
    let mut prev = f.clone();
    let mut cur = op(f)?;
    for _ in 1..steps {
        let next = &op(&cur)?.scale(&two) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn mu1(f: &TreeFunction) -> Result<TreeFunction> {
    mean_value(f, 1)
}

/// `U_n(mu_1) f` for any integer `n`.
pub fn apply_chebyshev_u(n: i64, f: &TreeFunction) -> Result<TreeFunction> {
    chebyshev_u_operator(n, f, 1, mu1)
}

/// `T_n(mu_1) f` for any integer `n`.
pub fn apply_chebyshev_t(n: i64, f: &TreeFunction) -> Result<TreeFunction> {
    chebyshev_t_operator(n, f, 1, mu1)
}

/// Right-hand side of the iterated mean value formula for `mu_k mu_l f`.
pub fn compose_mu(k: usize, l: usize, f: &TreeFunction) -> Result<TreeFunction> {
    require(f.domain_radius(), k + l)?;
    let m = k.min(l);
    if m == 0 {
        return mean_value(f, k + l);
    }
    let q = int(f.q() as i64);
    let q1 = &q + int(1);
    let mut acc = mean_value(f, k + l)?.scale(&(&q / &q1));
    let mut q_pow = BigRational::one();
    for i in 1..m {
        q_pow *= &q;
        let c = (&q - int(1)) / (&q_pow * &q1);
        if !c.is_zero() {
            acc = acc.add_scaled(&c, &mean_value(f, k + l - 2 * i)?);
        }
    }
    let last = (q_pow * q1).recip();
    Ok(acc.add_scaled(&last, &mean_value(f, k.abs_diff(l))?))
}

/// Coefficients `t_0..t_k` with `mu_1^k = sum t_i mu_i`.
pub fn mu1_power_in_mu_basis(k: usize, q: u32) -> Vec<BigRational> {
    let q = int(q as i64);
    let up = &q / (&q + int(1));
    let down = (&q + int(1)).recip();
    let mut t = vec![BigRational::one()];
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); t.len() + 1];
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            if i == 0 {
                next[1] += ti;
            } else {
                next[i + 1] += ti * &up;
                next[i - 1] += ti * &down;
            }
        }
        t = next;
    }
    t
}

/// The polynomial `P_k` with `mu_k = P_k(mu_1)`.
pub fn mu_k_poly(k: usize, q: u32) -> RationalPoly {
    let qr = int(q as i64);
    let up = (&qr + int(1)) / &qr;
    let down = qr.recip();
    let mut prev = RationalPoly::one();
    if k == 0 {
        return prev;
    }
    let mut cur = RationalPoly::x();
    for _ in 1..k {
        let next = &cur.shift(1).scale(&up) - &prev.scale(&down);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k` from the closed form
/// `q^{-k/2} [sqrt(q) x U_{k-1}(c x) - U_{k-2}(c x)]`, `c = (q+1) / (2 sqrt(q))`,
/// evaluated in `Q[sqrt(q)]`. Fails if a `sqrt(q)` component survives.
pub fn mu_k_poly_closed_form(k: usize, q: u32) -> Result<RationalPoly> {
    let qr = int(q as i64);
    let root = QuadExt::root(&qr);
    let c = root.scale(&((&qr + int(1)) / (int(2) * &qr)));
    let inv_root = root.scale(&qr.recip());
    let k = k as i64;
    let lead = &QuadExtPoly::linear(root) * &chebyshev_u_scaled(k - 1, &c);
    let bracket = &lead - &chebyshev_u_scaled(k - 2, &c);
    bracket.scale(&inv_root.pow(k as u32)).rational_part()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coefficients of `mu_1^0, mu_1^1, ...`.
    Mu1Poly,
    /// Coefficients of `mu_0, mu_1, ..., mu_k`.
    MuCombination,
}

/// A linear operator that is a polynomial in `mu_1`, in one of two bases.
///
/// The coefficient list is kept as given: its length minus one is the
/// declared degree, which is exactly the domain shrink of [`apply`].
///
/// [`apply`]: OperatorExpr::apply
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorExpr {
    pub basis: Basis,
    pub coefficients: Vec<BigRational>,
}

impl OperatorExpr {
    pub fn mu1_poly(p: &RationalPoly) -> Self {
        OperatorExpr {
            basis: Basis::Mu1Poly,
            coefficients: p.coeffs().to_vec(),
        }
    }

    pub fn mu_combination(coefficients: Vec<BigRational>) -> Self {
        OperatorExpr {
            basis: Basis::MuCombination,
            coefficients,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn top(&self) -> Option<&BigRational> {
        self.coefficients.last()
    }

    pub fn to_mu_combination(&self, q: u32) -> OperatorExpr {
        match self.basis {
            Basis::MuCombination => self.clone(),
            Basis::Mu1Poly => {
                let mut out = vec![BigRational::zero(); self.coefficients.len()];
                for (j, c) in self.coefficients.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, t) in mu1_power_in_mu_basis(j, q).iter().enumerate() {
                        out[i] += c * t;
                    }
                }
                OperatorExpr::mu_combination(out)
            }
        }
    }

    pub fn to_mu1_poly(&self, q: u32) -> OperatorExpr {
        match self.basis {
            Basis::Mu1Poly => self.clone(),
            Basis::MuCombination => {
                let mut out = vec![BigRational::zero(); self.coefficients.len()];
                for (i, c) in self.coefficients.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, r) in mu_k_poly(i, q).coeffs().iter().enumerate() {
                        out[j] += c * r;
                    }
                }
                OperatorExpr {
                    basis: Basis::Mu1Poly,
                    coefficients: out,
                }
            }
        }
    }

    pub fn as_poly(&self, q: u32) -> RationalPoly {
        RationalPoly::from_coeffs(self.to_mu1_poly(q).coefficients)
    }

    pub fn apply(&self, f: &TreeFunction) -> Result<TreeFunction> {
        let out_r = require(f.domain_radius(), self.degree())?;
        match self.basis {
            Basis::Mu1Poly => {
                let p = RationalPoly::from_coeffs(self.coefficients.clone());
                apply_mu1_poly(&p, f)?.restrict(out_r)
            }
            Basis::MuCombination => {
                let mut acc = TreeFunction::zero(f.ball().clone(), out_r)?;
                for (i, c) in self.coefficients.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add_scaled(c, &mean_value(f, i)?);
                    }
                }
                Ok(acc)
            }
        }
    }
}

/// `Sigma_n f = (q+1) q^{n-1} mu_n f`, with `Sigma_0 f = f`.
pub fn sigma_apply(n: usize, f: &TreeFunction) -> Result<TreeFunction> {
    let mean = mean_value(f, n)?;
    if n == 0 {
        return Ok(mean);
    }
    Ok(mean.scale(&sphere_size_rat(f.q(), n)))
}

/// How the free values in [`solve_surjective`] are filled in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FreeValuePolicy {
    /// Spread the required cone sum evenly over the cone.
    #[default]
    Equal,
    /// Put the whole cone sum on the first cone vertex, zero elsewhere.
    First,
}

impl FromStr for FreeValuePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(FreeValuePolicy::Equal),
            "first" => Ok(FreeValuePolicy::First),
            other => Err(Error::InvalidParameter(format!("unknown policy '{other}'"))),
        }
    }
}

/// Constructs a preimage `f` with `Q f = g` on the domain of `g`.
///
/// `f` vanishes on `B_{k-1}(o)`. Moving outward one layer at a time, the
/// value `Q f(v)` depends on `f` only through vertices already assigned, plus
/// the depth-`k` descendants of `v` (the whole sphere `S_k(o)` for the
/// root); those are set so that `Q f(v) = g(v)`. The result lives on radius
/// `M + k` where `M` is the domain radius of `g`.
pub fn solve_surjective(
    op: &OperatorExpr,
    g: &TreeFunction,
    policy: FreeValuePolicy,
) -> Result<TreeFunction> {
    let ball = g.ball().clone();
    let q = ball.q();
    let op = op.to_mu_combination(q);
    let top = match op.top() {
        Some(c) if !c.is_zero() => c.clone(),
        _ => return Err(Error::DegenerateOperator),
    };
    let k = op.degree();
    let m_max = g.domain_radius();
    let needed = m_max + k;
    if needed > ball.radius() {
        return Err(Error::InsufficientRadius {
            needed,
            available: ball.radius(),
        });
    }
    if k == 0 {
        return Ok(g.scale(&top.recip()));
    }

    let norms: Vec<BigRational> = (0..=k).map(|i| sphere_size_rat(q, i).recip()).collect();
    let top_norm = sphere_size_rat(q, k);
    let mut values = vec![BigRational::zero(); ball.ball_len(needed)];
    for m in 0..=m_max {
        for v in ball.layer(m) {
            let mut partial = BigRational::zero();
            for (i, c) in op.coefficients.iter().enumerate() {
                if !c.is_zero() {
                    partial += c * sphere_sum(&ball, &values, v, m, i) * &norms[i];
                }
            }
            // cone vertices are still zero, so `partial` holds only assigned terms
            let cone = ball.descendant_range(v, m, k);
            let needed_sum = (&g.values()[v] - partial) * &top_norm / &top;
            match policy {
                FreeValuePolicy::Equal => {
                    let each = needed_sum / BigRational::from_integer(cone.len().into());
                    for s in cone {
                        values[s] = each.clone();
                    }
                }
                FreeValuePolicy::First => values[cone.start] = needed_sum,
            }
        }
    }
    TreeFunction::new(ball, needed, values)
}
