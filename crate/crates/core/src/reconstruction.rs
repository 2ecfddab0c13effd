//! Inverse problems: recovering a wave from snapshots at two or three times.
//!
//! Snapshots are named `f = f_0`, `g = f_k`, `h = f_l` with `0 < k < l`.
//! A wave's Cauchy data satisfy `U_{k-1}(mu_1) f_1 = g + U_{k-2}(mu_1) f`, so
//! the problems reduce to inverting Chebyshev polynomials in `mu_1`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::operators::{apply_chebyshev_u, apply_mu1_poly, solve_surjective, FreeValuePolicy, OperatorExpr};
use crate::poly::{bezout, chebyshev_u, div_exact, RationalPoly};
use crate::wave::{combo_snapshot, snapshot_at_multiple, CauchyData};

/// Outcome of an identity check: both sides are compared on their common
/// domain and `residual` is their difference there.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub residual: TreeFunction,
}

impl Verdict {
    pub fn compare(lhs: &TreeFunction, rhs: &TreeFunction) -> Verdict {
        let residual = lhs - rhs;
        Verdict {
            holds: residual.is_zero(),
            residual,
        }
    }
}

fn check_times(k: usize, l: usize) -> Result<()> {
    if k == 0 || l <= k {
        return Err(Error::InvalidParameter(format!("need 0 < k < l, got k={k}, l={l}")));
    }
    Ok(())
}

fn same_balls(fs: &[&TreeFunction]) -> Result<()> {
    for w in fs.windows(2) {
        w[0].same_ball(w[1])?;
    }
    Ok(())
}

fn restrict_to(f: &TreeFunction, r: usize) -> Result<TreeFunction> {
    f.restrict(r.min(f.domain_radius()))
}

/// Cauchy data of a wave with `f_0 = g` and `f_k = h`.
///
/// `f_1` solves `U_{k-1}(mu_1) f_1 = h + U_{k-2}(mu_1) g`; the right-hand side
/// is cut to radius `M - (k-1)` so that `f_1` lives on the full radius `M`
/// of the inputs. The resulting wave reproduces `h` at time `k` on its whole
/// snapshot domain `B_{M-(k-1)}`.
pub fn two_snapshot_solve(
    g: &TreeFunction,
    h: &TreeFunction,
    k: usize,
    policy: FreeValuePolicy,
) -> Result<CauchyData> {
    if k == 0 {
        return Err(Error::InvalidParameter("snapshot time k must be positive".into()));
    }
    same_balls(&[g, h])?;
    let m = g.domain_radius().min(h.domain_radius());
    let target = m.checked_sub(k - 1).ok_or(Error::DomainTooSmall {
        needed: k - 1,
        available: m,
    })?;
    let k = k as i64;
    let rhs = h + &apply_chebyshev_u(k - 2, g)?;
    let op = OperatorExpr::mu1_poly(&chebyshev_u(k - 1));
    let f1 = solve_surjective(&op, &rhs.restrict(target)?, policy)?;
    CauchyData::new(g.restrict(m)?, f1)
}

/// `a = g + U_{k-2}(mu_1) f` and `b = h + U_{l-2}(mu_1) f`, the values that
/// `U_{k-1}(mu_1) f_1` and `U_{l-1}(mu_1) f_1` must take.
fn targets(f: &TreeFunction, g: &TreeFunction, h: &TreeFunction, k: usize, l: usize) -> Result<(TreeFunction, TreeFunction)> {
    check_times(k, l)?;
    same_balls(&[f, g, h])?;
    let a = g + &apply_chebyshev_u(k as i64 - 2, f)?;
    let b = h + &apply_chebyshev_u(l as i64 - 2, f)?;
    Ok((a, b))
}

/// `U_{l-1}(mu_1) a = U_{k-1}(mu_1) b`, necessary for `(f, g, h)` to be
/// snapshots at times `0, k, l`.
pub fn compatibility_check(f: &TreeFunction, g: &TreeFunction, h: &TreeFunction, k: usize, l: usize) -> Result<Verdict> {
    let (a, b) = targets(f, g, h, k, l)?;
    let lhs = apply_chebyshev_u(l as i64 - 1, &a)?;
    let rhs = apply_chebyshev_u(k as i64 - 1, &b)?;
    Ok(Verdict::compare(&lhs, &rhs))
}

/// `W = U_{k-1} / U_{d-1}`, `V = U_{l-1} / U_{d-1}` with `d = gcd(k, l)`.
pub fn reduced_chebyshev(k: usize, l: usize) -> Result<(usize, RationalPoly, RationalPoly)> {
    let d = k.gcd(&l);
    let ud = chebyshev_u(d as i64 - 1);
    let w = div_exact(&chebyshev_u(k as i64 - 1), &ud)?;
    let v = div_exact(&chebyshev_u(l as i64 - 1), &ud)?;
    Ok((d, w, v))
}

/// `V(mu_1) a = W(mu_1) b`, necessary and sufficient for `(f, g, h)` to be
/// snapshots of some wave. Coincides with [`compatibility_check`] when
/// `gcd(k, l) = 1`.
pub fn strong_compatibility_check(
    f: &TreeFunction,
    g: &TreeFunction,
    h: &TreeFunction,
    k: usize,
    l: usize,
) -> Result<Verdict> {
    let (a, b) = targets(f, g, h, k, l)?;
    let (_, w, v) = reduced_chebyshev(k, l)?;
    Ok(Verdict::compare(&apply_mu1_poly(&v, &a)?, &apply_mu1_poly(&w, &b)?))
}

/// Cauchy data of a wave with snapshots `f, g, h` at times `0, k, l`.
///
/// With `W Qt + V Rt = 1`, the function `f* = Qt(mu_1) a + Rt(mu_1) b`
/// satisfies `W f* = a` and `V f* = b`, and `f_1` solves
/// `U_{d-1}(mu_1) f_1 = f*`. For coprime times `U_{d-1} = 1` and the wave is
/// unique.
pub fn three_snapshot_solve(
    f: &TreeFunction,
    g: &TreeFunction,
    h: &TreeFunction,
    k: usize,
    l: usize,
    policy: FreeValuePolicy,
) -> Result<CauchyData> {
    let verdict = strong_compatibility_check(f, g, h, k, l)?;
    if !verdict.holds {
        return Err(Error::Incompatible(format!(
            "snapshots at times 0, {k}, {l} fail strong compatibility at {} vertices",
            verdict.residual.support_size()
        )));
    }
    let (a, b) = targets(f, g, h, k, l)?;
    let (d, w, v) = reduced_chebyshev(k, l)?;
    let bz = bezout(&w, &v)?;
    let mut parts = Vec::new();
    for (p, x) in [(&bz.s, &a), (&bz.t, &b)] {
        if !p.is_zero() {
            parts.push(apply_mu1_poly(p, x)?);
        }
    }
    let f_star = match parts.as_slice() {
        [x] => x.clone(),
        [x, y] => x + y,
        _ => unreachable!("W and V are coprime, so the Bezout pair is not all zero"),
    };
    let m = f.domain_radius();
    let cap = m.checked_sub(d - 1).ok_or(Error::DomainTooSmall {
        needed: d - 1,
        available: m,
    })?;
    let f_star = restrict_to(&f_star, cap)?;
    let op = OperatorExpr::mu1_poly(&chebyshev_u(d as i64 - 1));
    let f1 = solve_surjective(&op, &f_star, policy)?;
    CauchyData::new(f.restrict(f1.domain_radius())?, f1)
}

/// `f_d`, `d = gcd(k, l)`, from snapshots at `0, k, l` of one wave: with
/// `r k + s l = d`, combine `f_{rk}` and `f_{sl}`.
pub fn recover_gcd_snapshot(f0: &TreeFunction, fk: &TreeFunction, fl: &TreeFunction, k: usize, l: usize) -> Result<TreeFunction> {
    check_times(k, l)?;
    same_balls(&[f0, fk, fl])?;
    let (k, l) = (k as i64, l as i64);
    let e = k.extended_gcd(&l);
    let (r, s) = (e.x, e.y);
    let f_rk = snapshot_at_multiple(f0, fk, r, k)?;
    if s == 0 {
        return Ok(f_rk);
    }
    let f_sl = snapshot_at_multiple(f0, fl, s, l)?;
    if r == 0 {
        return Ok(f_sl);
    }
    combo_snapshot(f0, &f_rk, &f_sl, r * k, s * l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleClass {
    Incompatible,
    CompatibleNotSnapshot,
    Snapshot,
}

impl TripleClass {
    pub fn name(self) -> &'static str {
        match self {
            TripleClass::Incompatible => "incompatible",
            TripleClass::CompatibleNotSnapshot => "compatible-not-snapshot",
            TripleClass::Snapshot => "snapshot",
        }
    }
}

pub fn classify_triple(f: &TreeFunction, g: &TreeFunction, h: &TreeFunction, k: usize, l: usize) -> Result<TripleClass> {
    if !compatibility_check(f, g, h, k, l)?.holds {
        return Ok(TripleClass::Incompatible);
    }
    if strong_compatibility_check(f, g, h, k, l)?.holds {
        Ok(TripleClass::Snapshot)
    } else {
        Ok(TripleClass::CompatibleNotSnapshot)
    }
}

/// Snapshots at increasing times starting from zero.
#[derive(Debug, Clone)]
pub struct SnapshotProblem {
    times: Vec<usize>,
    snapshots: Vec<TreeFunction>,
}

impl SnapshotProblem {
    pub fn new(times: Vec<usize>, snapshots: Vec<TreeFunction>) -> Result<Self> {
        if !(2..=3).contains(&times.len()) || times.len() != snapshots.len() {
            return Err(Error::InvalidParameter(format!(
                "need 2 or 3 snapshots with matching times, got {} times and {} snapshots",
                times.len(),
                snapshots.len()
            )));
        }
        if times[0] != 0 || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "times must start at 0 and increase, got {times:?}"
            )));
        }
        let r = snapshots[0].domain_radius();
        for s in &snapshots[1..] {
            snapshots[0].same_ball(s)?;
            if s.domain_radius() != r {
                return Err(Error::InvalidParameter("snapshots must share one domain radius".into()));
            }
        }
        Ok(SnapshotProblem { times, snapshots })
    }

    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn snapshots(&self) -> &[TreeFunction] {
        &self.snapshots
    }

    pub fn solve(&self, policy: FreeValuePolicy) -> Result<CauchyData> {
        let s = &self.snapshots;
        match self.times[..] {
            [_, k] => two_snapshot_solve(&s[0], &s[1], k, policy),
            [_, k, l] => three_snapshot_solve(&s[0], &s[1], &s[2], k, l, policy),
            _ => unreachable!("length checked in new"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_rational::BigRational;

    use super::*;
    use crate::random::RandomRationals;
    use crate::tree::TreeBall;
    use crate::wave::propagate;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ball(q: u32, r: usize) -> Arc<TreeBall> {
        Arc::new(TreeBall::new(q, r).unwrap())
    }

    fn random_wave(b: &Arc<TreeBall>, r: usize, seed: u64) -> CauchyData {
        let mut rng = RandomRationals::new(seed);
        CauchyData::new(rng.function(b, r).unwrap(), rng.function(b, r).unwrap()).unwrap()
    }

    fn agree(a: &TreeFunction, b: &TreeFunction) -> bool {
        let r = a.domain_radius().min(b.domain_radius());
        a.restrict(r).unwrap() == b.restrict(r).unwrap()
    }

    /// Snapshots at `0, k, l` restricted to the domain of `f_l`.
    fn triple(c: &CauchyData, k: usize, l: usize) -> [TreeFunction; 3] {
        let h = propagate(c, l as i64).unwrap();
        let r = h.domain_radius();
        [
            c.f0().restrict(r).unwrap(),
            propagate(c, k as i64).unwrap().restrict(r).unwrap(),
            h,
        ]
    }

    #[test]
    fn two_snapshots_round_trip() {
        for q in 1..=3 {
            for k in 2..=3usize {
                let b = ball(q, 6);
                let mut rng = RandomRationals::new(q as u64 * 10 + k as u64);
                let g = rng.function(&b, 4).unwrap();
                let h = rng.function(&b, 4).unwrap();
                let c = two_snapshot_solve(&g, &h, k, FreeValuePolicy::Equal).unwrap();
                assert_eq!(c.f0(), &g);
                let fk = propagate(&c, k as i64).unwrap();
                assert_eq!(fk.domain_radius(), 4 - (k - 1));
                assert_eq!(fk, h.restrict(fk.domain_radius()).unwrap());
            }
        }
    }

    #[test]
    fn two_snapshot_constant() {
        let b = ball(2, 4);
        let c3 = TreeFunction::constant(b, 4, rat(3, 1)).unwrap();
        let c = two_snapshot_solve(&c3, &c3, 2, FreeValuePolicy::Equal).unwrap();
        let f2 = propagate(&c, 2).unwrap();
        assert!(f2.values().iter().all(|v| *v == rat(3, 1)));
    }

    #[test]
    fn policies_share_multiples_only() {
        let b = ball(2, 8);
        let mut rng = RandomRationals::new(3);
        let g = rng.function(&b, 8).unwrap();
        let h = rng.function(&b, 8).unwrap();
        let k = 2;
        let c1 = two_snapshot_solve(&g, &h, k, FreeValuePolicy::Equal).unwrap();
        let c2 = two_snapshot_solve(&g, &h, k, FreeValuePolicy::First).unwrap();
        assert_ne!(c1.f1(), c2.f1());
        for n in -2..=2i64 {
            let t = n * k as i64;
            assert!(agree(&propagate(&c1, t).unwrap(), &propagate(&c2, t).unwrap()), "t={t}");
        }
        assert!(!agree(&propagate(&c1, 3).unwrap(), &propagate(&c2, 3).unwrap()));
    }

    #[test]
    fn genuine_triples_are_compatible() {
        let small = random_wave(&ball(2, 9), 9, 4);
        let line = random_wave(&ball(1, 24), 24, 4);
        let cases = [(&small, 2, 3), (&small, 2, 4), (&small, 3, 4), (&line, 2, 6), (&line, 4, 6), (&line, 3, 6)];
        for (c, k, l) in cases {
            let [f, g, h] = triple(c, k, l);
            assert!(compatibility_check(&f, &g, &h, k, l).unwrap().holds, "({k},{l})");
            assert!(strong_compatibility_check(&f, &g, &h, k, l).unwrap().holds, "({k},{l})");
            assert_eq!(classify_triple(&f, &g, &h, k, l).unwrap(), TripleClass::Snapshot);
        }
    }

    #[test]
    fn coprime_checks_coincide() {
        let b = ball(2, 7);
        let mut rng = RandomRationals::new(5);
        let [f, g, h] = [0; 3].map(|_| rng.function(&b, 7).unwrap());
        let plain = compatibility_check(&f, &g, &h, 2, 3).unwrap();
        let strong = strong_compatibility_check(&f, &g, &h, 2, 3).unwrap();
        assert_eq!(plain, strong);
        assert!(!plain.holds);
        assert_eq!(classify_triple(&f, &g, &h, 2, 3).unwrap(), TripleClass::Incompatible);
    }

    #[test]
    fn perturbed_triple_is_incompatible() {
        let b = ball(2, 8);
        let c = random_wave(&b, 8, 6);
        let [f, g, mut h] = triple(&c, 2, 3);
        h.set(0, h.value(0).unwrap() + rat(1, 1)).unwrap();
        let v = compatibility_check(&f, &g, &h, 2, 3).unwrap();
        assert!(!v.holds);
        assert!(three_snapshot_solve(&f, &g, &h, 2, 3, FreeValuePolicy::Equal).is_err());
    }

    #[test]
    fn three_snapshots_coprime() {
        for q in 1..=2 {
            let b = ball(q, 9);
            let c = random_wave(&b, 9, 7 + q as u64);
            let [f, g, h] = triple(&c, 2, 3);
            let s1 = three_snapshot_solve(&f, &g, &h, 2, 3, FreeValuePolicy::Equal).unwrap();
            let s2 = three_snapshot_solve(&f, &g, &h, 2, 3, FreeValuePolicy::First).unwrap();
            assert_eq!(s1, s2);
            for t in -2..=5 {
                assert!(agree(&propagate(&s1, t).unwrap(), &propagate(&c, t).unwrap()), "t={t}");
            }
        }
    }

    #[test]
    fn three_snapshots_with_common_factor() {
        let b = ball(2, 10);
        let c = random_wave(&b, 10, 9);
        let [f, g, h] = triple(&c, 2, 4);
        let s = three_snapshot_solve(&f, &g, &h, 2, 4, FreeValuePolicy::Equal).unwrap();
        for t in [0, 2, 4, 6, -2] {
            assert!(agree(&propagate(&s, t).unwrap(), &propagate(&c, t).unwrap()), "t={t}");
        }
        let s2 = three_snapshot_solve(&f, &g, &h, 2, 4, FreeValuePolicy::First).unwrap();
        assert_ne!(s.f1(), s2.f1());
    }

    #[test]
    fn reduced_polynomials() {
        let (d, w, v) = reduced_chebyshev(2, 4).unwrap();
        assert_eq!(d, 2);
        assert_eq!(w, RationalPoly::one());
        assert_eq!(v, RationalPoly::from_ints(&[-2, 0, 4]));
        let (d, w, v) = reduced_chebyshev(2, 3).unwrap();
        assert_eq!((d, w, v), (1, chebyshev_u(1), chebyshev_u(2)));
    }

    #[test]
    fn gcd_snapshot_recovery() {
        let c = random_wave(&ball(2, 10), 10, 11);
        let line = random_wave(&ball(1, 24), 24, 11);
        for (c, k, l) in [(&c, 2, 3), (&c, 2, 4), (&line, 4, 6), (&line, 3, 5)] {
            let [f, g, h] = triple(c, k, l);
            let fd = recover_gcd_snapshot(&f, &g, &h, k, l).unwrap();
            let d = k.gcd(&l) as i64;
            assert!(agree(&fd, &propagate(c, d).unwrap()), "({k},{l})");
        }
        let [f, g, h] = triple(&c, 2, 4);
        assert_eq!(recover_gcd_snapshot(&f, &g, &h, 2, 4).unwrap(), g);
    }

    #[test]
    fn problem_dispatch() {
        let b = ball(2, 8);
        let c = random_wave(&b, 8, 12);
        let [f, g, h] = triple(&c, 2, 3);
        let p = SnapshotProblem::new(vec![0, 2, 3], vec![f.clone(), g.clone(), h]).unwrap();
        let s = p.solve(FreeValuePolicy::Equal).unwrap();
        assert!(agree(s.f1(), c.f1()));
        assert!(SnapshotProblem::new(vec![1, 2], vec![f.clone(), g.clone()]).is_err());
        assert!(SnapshotProblem::new(vec![0, 2, 2], vec![f.clone(), g.clone(), g]).is_err());
        assert!(SnapshotProblem::new(vec![0], vec![f]).is_err());
    }

    #[test]
    fn bad_times() {
        let b = ball(2, 4);
        let f = TreeFunction::zero(b, 4).unwrap();
        assert!(compatibility_check(&f, &f, &f, 3, 3).is_err());
        assert!(compatibility_check(&f, &f, &f, 0, 3).is_err());
        assert!(two_snapshot_solve(&f, &f, 0, FreeValuePolicy::Equal).is_err());
    }
}
