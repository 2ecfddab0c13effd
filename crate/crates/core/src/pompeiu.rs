//! Two-circle problem: find `f` with `mu_k f = g` and `mu_l f = h`.
//!
//! With `Sigma_m = (q+1) q^{m-1} mu_m = p_m(Sigma_1)` for the Geronimus
//! polynomials `p_m`, a Bezout pair `p_k Q + p_l R = 1` yields
//! `f = Q(Sigma_1) G + R(Sigma_1) H` where `G = Sigma_k`-scaled `g` and
//! `H = Sigma_l`-scaled `h`.

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::operators::{apply_mu1_poly, mean_value};
use crate::poly::{bezout, geronimus_p, int, RationalPoly};
use crate::reconstruction::Verdict;
use crate::tree::sphere_size;

/// The uniqueness condition on `(k, l, q)`: distinct, not both odd, and for
/// `q = 2` not both congruent to 4 mod 6.
pub fn pompeiu_condition(k: usize, l: usize, q: u32) -> bool {
    k != l && !(k % 2 == 1 && l % 2 == 1) && !(q == 2 && k % 6 == 4 && l % 6 == 4)
}

/// `mu_l g = mu_k h`, necessary for a common preimage.
pub fn two_circle_check(g: &TreeFunction, h: &TreeFunction, k: usize, l: usize) -> Result<Verdict> {
    g.same_ball(h)?;
    Ok(Verdict::compare(&mean_value(g, l)?, &mean_value(h, k)?))
}

/// `(Q, R)` with `p_k Q + p_l R = 1`.
///
/// If `p_k` and `p_l` share a factor this fails with
/// [`Error::ConditionViolated`] when the uniqueness condition is false and
/// [`Error::NotCoprime`] otherwise. A false condition with coprime
/// polynomials still succeeds.
pub fn pompeiu_bezout(k: usize, l: usize, q: u32) -> Result<(RationalPoly, RationalPoly)> {
    if k == 0 || l == 0 || k == l {
        return Err(Error::InvalidParameter(format!(
            "radii must be distinct and positive, got k={k}, l={l}"
        )));
    }
    let bz = bezout(&geronimus_p(k, q), &geronimus_p(l, q))?;
    if bz.gcd != RationalPoly::one() {
        return Err(if pompeiu_condition(k, l, q) {
            Error::NotCoprime { k, l, q }
        } else {
            Error::ConditionViolated { k, l, q }
        });
    }
    Ok((bz.s, bz.t))
}

/// `P(Sigma_1)` rewritten as a polynomial in `mu_1`.
fn in_mu1(p: &RationalPoly, q: u32) -> RationalPoly {
    p.compose(&RationalPoly::x().scale(&int(q as i64 + 1)))
}

fn sigma_scale(q: u32, m: usize) -> Result<num_rational::BigRational> {
    let n = sphere_size(q, m).ok_or_else(|| Error::InvalidParameter(format!("radius {m} too large")))?;
    Ok(num_rational::BigRational::from_integer(n.into()))
}

/// `Q(Sigma_1) G + R(Sigma_1) H` for a given Bezout pair, without checks.
pub fn two_circle_apply(
    g: &TreeFunction,
    h: &TreeFunction,
    k: usize,
    l: usize,
    pair: (&RationalPoly, &RationalPoly),
) -> Result<TreeFunction> {
    g.same_ball(h)?;
    let q = g.q();
    let big_g = g.scale(&sigma_scale(q, k)?);
    let big_h = h.scale(&sigma_scale(q, l)?);
    let x = apply_mu1_poly(&in_mu1(pair.0, q), &big_g)?;
    let y = apply_mu1_poly(&in_mu1(pair.1, q), &big_h)?;
    if pair.0.is_zero() {
        return Ok(y);
    }
    if pair.1.is_zero() {
        return Ok(x);
    }
    Ok(&x + &y)
}

/// Both identities `mu_k f = g` and `mu_l f = h` on their common domains.
pub fn verify_two_circle(
    f: &TreeFunction,
    g: &TreeFunction,
    h: &TreeFunction,
    k: usize,
    l: usize,
) -> Result<(Verdict, Verdict)> {
    Ok((
        Verdict::compare(&mean_value(f, k)?, g),
        Verdict::compare(&mean_value(f, l)?, h),
    ))
}

/// The common preimage `f` of `g` under `mu_k` and `h` under `mu_l`.
///
/// `f` lives on radius `M - max(deg Q, deg R)` and must leave room for
/// `mu_l f`; both identities are checked before returning.
pub fn two_circle_solve(g: &TreeFunction, h: &TreeFunction, k: usize, l: usize) -> Result<TreeFunction> {
    let q = g.q();
    let (qp, rp) = pompeiu_bezout(k, l, q)?;
    let verdict = two_circle_check(g, h, k, l)?;
    if !verdict.holds {
        return Err(Error::Incompatible(format!(
            "mu_{l} g differs from mu_{k} h at {} vertices",
            verdict.residual.support_size()
        )));
    }
    let f = two_circle_apply(g, h, k, l, (&qp, &rp))?;
    let needed = k.max(l);
    if f.domain_radius() < needed {
        return Err(Error::DomainTooSmall {
            needed: needed + g.domain_radius() - f.domain_radius(),
            available: g.domain_radius(),
        });
    }
    let (a, b) = verify_two_circle(&f, g, h, k, l)?;
    if !(a.holds && b.holds) {
        return Err(Error::Incompatible("two-circle solution failed verification".into()));
    }
    Ok(f)
}
