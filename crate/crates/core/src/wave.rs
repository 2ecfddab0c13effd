//! The discrete wave equation `f_{k+1} + f_{k-1} = 2 mu_1 f_k` and its
//! Euler-Poisson-Darboux generalization `mu_1 f_k = s f_{k+1} + t f_{k-1}`.
//!
//! A wave is stored as its Cauchy data `(f_0, f_1)`; snapshots are computed
//! on demand. On a ball of domain radius `r` the snapshot `f_k` is valid on
//! radius `r - snapshot_shrink(k)`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::operators::{
    apply_chebyshev_t, apply_chebyshev_u, apply_mu1_poly, chebyshev_u_operator, mean_value,
};
use crate::poly::{int, RationalPoly};
use crate::quadext::{chebyshev_u_scaled, QuadExt};

/// Two consecutive snapshots `f_0`, `f_1` on the same ball and domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyData {
    f0: TreeFunction,
    f1: TreeFunction,
}

impl CauchyData {
    pub fn new(f0: TreeFunction, f1: TreeFunction) -> Result<Self> {
        f0.same_ball(&f1)?;
        if f0.domain_radius() != f1.domain_radius() {
            return Err(Error::InvalidParameter(format!(
                "Cauchy data domains differ: {} vs {}",
                f0.domain_radius(),
                f1.domain_radius()
            )));
        }
        Ok(CauchyData { f0, f1 })
    }

    pub fn f0(&self) -> &TreeFunction {
        &self.f0
    }

    pub fn f1(&self) -> &TreeFunction {
        &self.f1
    }

    pub fn domain_radius(&self) -> usize {
        self.f0.domain_radius()
    }

    pub fn into_parts(self) -> (TreeFunction, TreeFunction) {
        (self.f0, self.f1)
    }
}

/// How far the domain of `f_k` falls short of the Cauchy data's domain.
pub fn snapshot_shrink(k: i64) -> usize {
    if k >= 0 {
        (k.max(1) - 1) as usize
    } else {
        k.unsigned_abs() as usize
    }
}

fn snapshot_domain(r: usize, k: i64) -> Result<usize> {
    let needed = snapshot_shrink(k);
    r.checked_sub(needed).ok_or(Error::DomainTooSmall {
        needed,
        available: r,
    })
}

fn step(cur: &TreeFunction, prev: &TreeFunction) -> Result<TreeFunction> {
    Ok(&mean_value(cur, 1)?.scale(&int(2)) - prev)
}

/// `f_k` by running the recursion forward (`k > 1`) or backward (`k < 0`).
pub fn propagate(c: &CauchyData, k: i64) -> Result<TreeFunction> {
    snapshot_domain(c.domain_radius(), k)?;
    match k {
        0 => Ok(c.f0.clone()),
        1 => Ok(c.f1.clone()),
        _ => {
            let (mut prev, mut cur, steps) = if k > 1 {
                (c.f0.clone(), c.f1.clone(), k - 1)
            } else {
                (c.f1.clone(), c.f0.clone(), -k)
            };
            for _ in 0..steps {
                let next = step(&cur, &prev)?;
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
    }
}

/// `f_k = U_{k-1}(mu_1) f_1 - U_{k-2}(mu_1) f_0`.
pub fn closed_form(c: &CauchyData, k: i64) -> Result<TreeFunction> {
    let r = snapshot_domain(c.domain_radius(), k)?;
    let a = apply_chebyshev_u(k - 1, &c.f1)?;
    let b = apply_chebyshev_u(k - 2, &c.f0)?;
    (&a - &b).restrict(r)
}

/// Both sides of `f_{m+k} + f_{m-k} = 2 T_k(mu_1) f_m`, on a common domain.
pub fn shifted_sum(c: &CauchyData, m: i64, k: i64) -> Result<(TreeFunction, TreeFunction)> {
    let lhs = &propagate(c, m + k)? + &propagate(c, m - k)?;
    let rhs = apply_chebyshev_t(k, &propagate(c, m)?)?.scale(&int(2));
    let r = lhs.domain_radius().min(rhs.domain_radius());
    Ok((lhs.restrict(r)?, rhs.restrict(r)?))
}

/// `f_{nk} = U_{n-1}(T_k(mu_1)) f_k - U_{n-2}(T_k(mu_1)) f_0`, with the
/// outer Chebyshev polynomial applied by recurrence in the operator
/// `T_k(mu_1)`.
pub fn snapshot_at_multiple(f0: &TreeFunction, fk: &TreeFunction, n: i64, k: i64) -> Result<TreeFunction> {
    f0.same_ball(fk)?;
    let degree = k.unsigned_abs() as usize;
    let op = |g: &TreeFunction| apply_chebyshev_t(k, g);
    let a = chebyshev_u_operator(n - 1, fk, degree, op)?;
    let b = chebyshev_u_operator(n - 2, f0, degree, op)?;
    Ok(&a - &b)
}

/// `f_{a+b} = T_b(mu_1) f_a + T_a(mu_1) f_b - T_{a-b}(mu_1) f_0` for snapshots
/// `f_0, f_a, f_b` of one wave.
pub fn combo_snapshot(
    f0: &TreeFunction,
    fa: &TreeFunction,
    fb: &TreeFunction,
    a: i64,
    b: i64,
) -> Result<TreeFunction> {
    f0.same_ball(fa)?;
    f0.same_ball(fb)?;
    let x = apply_chebyshev_t(b, fa)?;
    let y = apply_chebyshev_t(a, fb)?;
    let z = apply_chebyshev_t(a - b, f0)?;
    Ok(&(&x + &y) - &z)
}

/// Weights of `mu_1 f_k = s f_{k+1} + t f_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpdParams {
    s: BigRational,
    t: BigRational,
}

impl EpdParams {
    pub fn new(s: BigRational, t: BigRational) -> Result<Self> {
        if !s.is_positive() || !t.is_positive() || &s + &t != BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "EPD weights need s, t > 0 and s + t = 1, got s={s}, t={t}"
            )));
        }
        Ok(EpdParams { s, t })
    }

    /// `s = t = 1/2`: the wave equation.
    pub fn wave() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        EpdParams {
            s: half.clone(),
            t: half,
        }
    }

    /// `s = q/(q+1)`, `t = 1/(q+1)`: the weights under which `f_k = mu_k f_0`
    /// when `f_1 = mu_1 f_0`.
    pub fn spherical(q: u32) -> Self {
        let q1 = int(q as i64 + 1);
        EpdParams {
            s: int(q as i64) / &q1,
            t: q1.recip(),
        }
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }
}

/// `f_{j+1} = (mu_1 f_j - t f_{j-1}) / s` iterated up to `f_k`.
pub fn epd_propagate(c: &CauchyData, params: &EpdParams, k: usize) -> Result<TreeFunction> {
    snapshot_domain(c.domain_radius(), k as i64)?;
    if k == 0 {
        return Ok(c.f0.clone());
    }
    let inv_s = params.s.recip();
    let neg_t = -&params.t;
    let mut prev = c.f0.clone();
    let mut cur = c.f1.clone();
    for _ in 1..k {
        let next = mean_value(&cur, 1)?.add_scaled(&neg_t, &prev).scale(&inv_s);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Polynomials `(A_k, B_k)` with `f_k = A_k(mu_1) f_1 - B_k(mu_1) f_0` for the
/// EPD equation, from
/// `f_k = (sqrt(t/s))^k [sqrt(s/t) U_{k-1}(c mu_1) f_1 - U_{k-2}(c mu_1) f_0]`,
/// `c = 1 / (2 sqrt(s t))`.
///
/// The square roots live in `Q[sqrt(D)]`, `D = s t`, through
/// `sqrt(t/s) = sqrt(D)/s`, `sqrt(s/t) = sqrt(D)/t`, `c = sqrt(D)/(2D)`.
/// Returns [`Error::IrrationalResidue`] if a `sqrt(D)` part fails to cancel.
pub fn epd_operator_polys(params: &EpdParams, k: usize) -> Result<(RationalPoly, RationalPoly)> {
    let d = &params.s * &params.t;
    let root = QuadExt::root(&d);
    let ratio = root.scale(&params.s.recip()).pow(k as u32);
    let c = root.scale(&(int(2) * &d).recip());
    let k = k as i64;
    let a_coef = &ratio * &root.scale(&params.t.recip());
    let a = chebyshev_u_scaled(k - 1, &c).scale(&a_coef);
    let b = chebyshev_u_scaled(k - 2, &c).scale(&ratio);
    Ok((a.rational_part()?, b.rational_part()?))
}

/// `f_k` of the EPD equation from its closed form.
pub fn epd_closed_form(c: &CauchyData, params: &EpdParams, k: usize) -> Result<TreeFunction> {
    let r = snapshot_domain(c.domain_radius(), k as i64)?;
    let (a, b) = epd_operator_polys(params, k)?;
    let x = apply_mu1_poly(&a, &c.f1)?;
    let y = if b.is_zero() {
        TreeFunction::zero(c.f0.ball().clone(), c.domain_radius())?
    } else {
        apply_mu1_poly(&b, &c.f0)?
    };
    (&x - &y).restrict(r)
}
