//! Named identity suites run on seeded random data, with JSON reports.
//!
//! Every case compares two independently computed sides exactly. Setting
//! `inject_fault` perturbs one side of every comparison, which must turn
//! every case into a failure (a negative control for the harness itself).

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::TreeFunction;
use crate::io::format_rational;
use crate::operators::{
    apply_mu1_poly, compose_mu, mean_value, mu_k_poly, mu_k_poly_closed_form, sigma_apply,
    solve_surjective, FreeValuePolicy, OperatorExpr,
};
use crate::poly::{chebyshev_u_degree, geronimus_p, int, RationalPoly};
use crate::pompeiu::{pompeiu_bezout, pompeiu_condition, two_circle_solve};
use crate::random::RandomRationals;
use crate::reconstruction::{three_snapshot_solve, two_snapshot_solve};
use crate::tree::TreeBall;
use crate::wave::{
    closed_form, epd_closed_form, epd_propagate, propagate, shifted_sum, snapshot_at_multiple,
    snapshot_shrink, CauchyData, EpdParams,
};

pub const SUITES: &[&str] = &[
    "imv",
    "commute",
    "wave-closed-form",
    "recurs1",
    "fnk",
    "mu-k-poly",
    "sigma",
    "epd",
    "surjective",
    "two-snapshot",
    "three-snapshot",
    "pompeiu",
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub q: u32,
    pub radius: usize,
    pub seed: u64,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub passed: bool,
    pub domain_radius: Option<usize>,
    pub residual_support: usize,
    pub residual_max_abs: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub q: u32,
    #[serde(rename = "R")]
    pub radius: usize,
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

struct Runner {
    cfg: VerifyConfig,
    ball: Arc<TreeBall>,
    rng: RandomRationals,
    cases: Vec<CaseReport>,
}

impl Runner {
    fn r(&self) -> usize {
        self.cfg.radius
    }

    fn random(&mut self, r: usize) -> TreeFunction {
        self.rng.function(&self.ball, r).expect("radius within ball")
    }

    fn cauchy(&mut self, r: usize) -> CauchyData {
        let f0 = self.random(r);
        let f1 = self.random(r);
        CauchyData::new(f0, f1).expect("same ball and radius")
    }

    fn error_case(&mut self, name: String, e: Error) {
        self.cases.push(CaseReport {
            name,
            passed: false,
            domain_radius: None,
            residual_support: 0,
            residual_max_abs: "0/1".into(),
            error: Some(format!("{}: {e}", e.code())),
        });
    }

    /// Exact comparison of two sides on their common domain.
    fn compare(&mut self, name: String, lhs: Result<TreeFunction>, rhs: Result<TreeFunction>) {
        let (mut lhs, rhs) = match (lhs, rhs) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return self.error_case(name, e),
        };
        if self.cfg.inject_fault {
            let v = lhs.values()[0].clone() + BigRational::one();
            lhs.set(0, v).expect("root is in every domain");
        }
        let residual = &lhs - &rhs;
        self.cases.push(CaseReport {
            name,
            passed: residual.is_zero(),
            domain_radius: Some(residual.domain_radius()),
            residual_support: residual.support_size(),
            residual_max_abs: format_rational(&residual.max_abs()),
            error: None,
        });
    }

    fn check(&mut self, name: String, ok: Result<bool>) {
        match ok {
            Ok(ok) => {
                let passed = ok != self.cfg.inject_fault;
                self.cases.push(CaseReport {
                    name,
                    passed,
                    domain_radius: None,
                    residual_support: usize::from(!passed),
                    residual_max_abs: if passed { "0/1" } else { "1/1" }.into(),
                    error: None,
                });
            }
            Err(e) => self.error_case(name, e),
        }
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidParameter(format!(
            "unknown suite '{name}', expected one of {}",
            SUITES.join(", ")
        )));
    }
    let ball = Arc::new(TreeBall::new(cfg.q, cfg.radius)?);
    let mut run = Runner {
        cfg: cfg.clone(),
        ball,
        rng: RandomRationals::new(cfg.seed),
        cases: Vec::new(),
    };
    match name {
        "imv" => imv(&mut run),
        "commute" => commute(&mut run),
        "wave-closed-form" => wave_closed_form(&mut run),
        "recurs1" => recurs1(&mut run),
        "fnk" => fnk(&mut run),
        "mu-k-poly" => mu_k(&mut run),
        "sigma" => sigma(&mut run),
        "epd" => epd(&mut run),
        "surjective" => surjective(&mut run),
        "two-snapshot" => two_snapshot(&mut run),
        "three-snapshot" => three_snapshot(&mut run),
        "pompeiu" => pompeiu(&mut run),
        _ => unreachable!("checked against SUITES"),
    }
    let passed = !run.cases.is_empty() && run.cases.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: name.into(),
        q: cfg.q,
        radius: cfg.radius,
        seed: cfg.seed,
        passed,
        cases: run.cases,
    })
}

fn imv(run: &mut Runner) {
    let r = run.r();
    let f = run.random(r);
    for k in 0..=3 {
        for l in 0..=3 {
            if k + l > r {
                continue;
            }
            let nested = mean_value(&f, l).and_then(|g| mean_value(&g, k));
            run.compare(format!("mu_{k} mu_{l}"), compose_mu(k, l, &f), nested);
        }
    }
}

fn commute(run: &mut Runner) {
    let r = run.r();
    let f = run.random(r);
    for k in 0..=3 {
        for l in k + 1..=3 {
            if k + l > r {
                continue;
            }
            let a = mean_value(&f, l).and_then(|g| mean_value(&g, k));
            let b = mean_value(&f, k).and_then(|g| mean_value(&g, l));
            run.compare(format!("mu_{k} mu_{l} = mu_{l} mu_{k}"), a, b);
        }
    }
}

fn wave_closed_form(run: &mut Runner) {
    let r = run.r();
    let c = run.cauchy(r);
    for k in -5..=6i64 {
        if snapshot_shrink(k) > r {
            continue;
        }
        run.compare(format!("f_{k}"), closed_form(&c, k), propagate(&c, k));
    }
}

fn recurs1(run: &mut Runner) {
    let r = run.r();
    let c = run.cauchy(r);
    for m in -2..=3i64 {
        for k in 0..=3i64 {
            let need = snapshot_shrink(m + k)
                .max(snapshot_shrink(m - k))
                .max(snapshot_shrink(m) + k as usize);
            if need > r {
                continue;
            }
            let name = format!("f_{{{m}+{k}}} + f_{{{m}-{k}}} = 2 T_{k} f_{m}");
            match shifted_sum(&c, m, k) {
                Ok((lhs, rhs)) => run.compare(name, Ok(lhs), Ok(rhs)),
                Err(e) => run.error_case(name, e),
            }
        }
    }
}

fn fnk(run: &mut Runner) {
    let r = run.r();
    let c = run.cauchy(r);
    for k in 0..=3i64 {
        for n in -2..=3i64 {
            let outer = chebyshev_u_degree(n - 1).max(chebyshev_u_degree(n - 2)).unwrap_or(0);
            let need = (snapshot_shrink(k) + outer * k as usize).max(snapshot_shrink(n * k));
            if need > r {
                continue;
            }
            let got = propagate(&c, k).and_then(|fk| {
                let f0 = c.f0().restrict(fk.domain_radius())?;
                snapshot_at_multiple(&f0, &fk, n, k)
            });
            run.compare(format!("f_{{{n}*{k}}}"), got, propagate(&c, n * k));
        }
    }
}

fn mu_k(run: &mut Runner) {
    let r = run.r();
    let q = run.cfg.q;
    let f = run.random(r);
    for k in 0..=5usize.min(r) {
        let p = mu_k_poly(k, q);
        run.compare(format!("P_{k}(mu_1) = mu_{k}"), apply_mu1_poly(&p, &f), mean_value(&f, k));
        let sums_to_one = p.coeffs().iter().sum::<BigRational>() == BigRational::one();
        run.check(format!("P_{k} coefficients sum to 1"), Ok(sums_to_one));
        run.check(
            format!("P_{k} equals the sqrt(q) closed form"),
            mu_k_poly_closed_form(k, q).map(|d| d == p),
        );
    }
}

fn sigma(run: &mut Runner) {
    let r = run.r();
    let q = run.cfg.q;
    let f = run.random(r);
    let scale = RationalPoly::x().scale(&int(q as i64 + 1));
    for n in 0..=4usize.min(r) {
        let p = geronimus_p(n, q).compose(&scale);
        run.compare(format!("Sigma_{n} = p_{n}(Sigma_1)"), sigma_apply(n, &f), apply_mu1_poly(&p, &f));
    }
}

fn epd(run: &mut Runner) {
    let r = run.r();
    let q = run.cfg.q;
    if r == 0 {
        return;
    }
    let f0 = run.random(r);
    let spherical = EpdParams::spherical(q);
    let c = mean_value(&f0, 1).and_then(|f1| CauchyData::new(f0.restrict(r - 1)?, f1));
    let c = match c {
        Ok(c) => c,
        Err(e) => return run.error_case("EPD Cauchy data".into(), e),
    };
    for k in 0..=4usize.min(r) {
        run.compare(format!("EPD f_{k} = mu_{k} f_0"), epd_propagate(&c, &spherical, k), mean_value(&f0, k));
    }
    let c = run.cauchy(r);
    let weights = [(1, 2), (q as i64, q as i64 + 1), (1, 3), (3, 5)];
    for (a, b) in weights {
        let s = BigRational::new(a.into(), b.into());
        let params = EpdParams::new(s.clone(), BigRational::one() - &s).expect("0 < s < 1");
        for k in 0..=4usize.min(r + 1) {
            run.compare(
                format!("EPD closed form s={s} k={k}"),
                epd_closed_form(&c, &params, k),
                epd_propagate(&c, &params, k),
            );
        }
    }
}

fn surjective(run: &mut Runner) {
    let r = run.r();
    for i in 0..20 {
        let k = i % 4;
        if k > r {
            continue;
        }
        let mut coeffs: Vec<BigRational> = (0..k).map(|_| run.rng.rational()).collect();
        coeffs.push(run.rng.nonzero_rational());
        let op = OperatorExpr::mu_combination(coeffs);
        let g = run.random(r - k);
        for policy in [FreeValuePolicy::Equal, FreeValuePolicy::First] {
            let f = solve_surjective(&op, &g, policy);
            let back = f.and_then(|f| op.apply(&f));
            run.compare(format!("case {i} (k={k}, {policy:?})"), back, Ok(g.clone()));
        }
    }
}

fn two_snapshot(run: &mut Runner) {
    let r = run.r();
    for k in 2..=3usize {
        if k > r + 1 {
            continue;
        }
        let g = run.random(r);
        let h = run.random(r);
        let a = two_snapshot_solve(&g, &h, k, FreeValuePolicy::Equal);
        let b = two_snapshot_solve(&g, &h, k, FreeValuePolicy::First);
        let (a, b) = match (a, b) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return run.error_case(format!("k={k} solve"), e),
        };
        run.compare(format!("k={k}: f_0 = g"), Ok(a.f0().clone()), Ok(g.clone()));
        run.compare(format!("k={k}: f_k = h"), propagate(&a, k as i64), Ok(h.clone()));
        for n in [-2i64, -1, 2] {
            let t = n * k as i64;
            if snapshot_shrink(t) > r {
                continue;
            }
            run.compare(
                format!("k={k}: policies agree at t={t}"),
                propagate(&a, t),
                propagate(&b, t),
            );
        }
    }
}

fn three_snapshot(run: &mut Runner) {
    let r = run.r();
    let c = run.cauchy(r);
    for (k, l) in [(2usize, 3usize), (2, 4)] {
        let triple = propagate(&c, l as i64).and_then(|h| {
            let m = h.domain_radius();
            Ok((c.f0().restrict(m)?, propagate(&c, k as i64)?.restrict(m)?, h))
        });
        let (f, g, h) = match triple {
            Ok(t) => t,
            Err(e) => return run.error_case(format!("({k},{l}) snapshots"), e),
        };
        let s = match three_snapshot_solve(&f, &g, &h, k, l, FreeValuePolicy::Equal) {
            Ok(s) => s,
            Err(e) => {
                run.error_case(format!("({k},{l}) solve"), e);
                continue;
            }
        };
        for t in [0, k, l] {
            run.compare(
                format!("({k},{l}): f_{t}"),
                propagate(&s, t as i64),
                propagate(&c, t as i64),
            );
        }
    }
}

fn pompeiu(run: &mut Runner) {
    let r = run.r();
    let q = run.cfg.q;
    for (k, l) in [(1usize, 2usize), (2, 3), (1, 4), (3, 4)] {
        if 3 * l > r + 1 || pompeiu_bezout(k, l, q).is_err() {
            continue;
        }
        let f0 = run.random(r);
        let g = mean_value(&f0, k).and_then(|g| g.restrict(r - l));
        let h = mean_value(&f0, l);
        let f = match (g, h) {
            (Ok(g), Ok(h)) => two_circle_solve(&g, &h, k, l),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        run.compare(format!("({k},{l}) round trip"), f, Ok(f0));
    }
    let rejected = matches!(pompeiu_bezout(1, 3, q), Err(Error::ConditionViolated { .. }));
    run.check("(1,3) rejected".into(), Ok(rejected && !pompeiu_condition(1, 3, q)));
    let zero = BigRational::zero();
    run.check("constant targets".into(), {
        let c = TreeFunction::constant(run.ball.clone(), r, int(2));
        c.and_then(|c| two_circle_solve(&c, &c, 1, 2))
            .map(|f| f.values().iter().all(|v| (v - int(2)) == zero))
    });
}
