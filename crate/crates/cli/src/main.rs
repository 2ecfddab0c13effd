//! `treewave` command-line interface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use treewave::io::{
    cauchy_from_json, cauchy_to_json, format_rational, function_from_json, function_to_csv,
    function_to_json,
};
use treewave::operators::{mean_value, FreeValuePolicy};
use treewave::pompeiu::{pompeiu_bezout, pompeiu_condition, two_circle_check, two_circle_solve, verify_two_circle};
use treewave::random::RandomRationals;
use treewave::reconstruction::{three_snapshot_solve, two_snapshot_solve, Verdict};
use treewave::tree::{ball_size, sphere_size};
use treewave::verify::{run_suite, VerifyConfig};
use treewave::wave::{propagate, snapshot_shrink, CauchyData};
use treewave::{Error, TreeBall, TreeFunction};

#[derive(Parser)]
#[command(name = "treewave", version, about = "Exact wave and mean value computations on homogeneous trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and layer counts of a ball, with its domain budget table.
    TreeInfo {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        radius: usize,
    },
    /// Propagate Cauchy data and write one snapshot file per time.
    Simulate {
        /// Cauchy data JSON file.
        #[arg(long)]
        cauchy: PathBuf,
        /// Comma-separated times, e.g. `-2,0,1,4`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        times: Vec<i64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write a display-only CSV per snapshot.
        #[arg(long)]
        csv: bool,
    },
    /// Recover Cauchy data from snapshots.
    #[command(subcommand)]
    Reconstruct(Reconstruct),
    /// Two-circle problem: condition check and solver.
    #[command(subcommand)]
    Pompeiu(Pompeiu),
    /// Run a named identity suite on seeded random data.
    Verify {
        suite: String,
        /// One or more values of q, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb every comparison (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write seeded random inputs.
    #[command(subcommand)]
    Generate(Generate),
}

#[derive(Subcommand)]
enum Reconstruct {
    /// From snapshots at times 0 and k.
    Two {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "equal")]
        policy: FreeValuePolicy,
        #[arg(long)]
        out: PathBuf,
    },
    /// From snapshots at times 0, k and l.
    Three {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value = "equal")]
        policy: FreeValuePolicy,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Pompeiu {
    /// Report the uniqueness condition and coprimality; with `--g --h`, also
    /// check `mu_l g = mu_k h`.
    Check {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, requires = "h")]
        g: Option<PathBuf>,
        #[arg(long, requires = "g")]
        h: Option<PathBuf>,
    },
    /// Find `f` with `mu_k f = g` and `mu_l f = h`.
    Solve {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct BallArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    radius: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Generate {
    /// A random function on the whole ball.
    Function {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random Cauchy data on the whole ball.
    Cauchy {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Snapshots of one random wave at the given nonnegative times, cut to a
    /// common domain. Files are named `snapshot_t<time>.json`.
    Snapshots {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<i64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// A random `f` with `g = mu_k f` and `h = mu_l f`, as `f.json`, `g.json`,
    /// `h.json`.
    Means {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    VerifyFailed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io(..) => "io-error",
            CliError::VerifyFailed(_) => "verification-failed",
        }
    }

    fn status(&self) -> u8 {
        match self.code() {
            "verification-failed" => 1,
            "invalid-parameter" => 3,
            "invalid-vertex" => 4,
            "sphere-out-of-range" => 5,
            "domain-too-small" => 6,
            "insufficient-radius" => 7,
            "ball-mismatch" => 8,
            "zero-polynomial" => 9,
            "not-divisible" => 10,
            "degenerate-operator" => 11,
            "irrational-residue" => 12,
            "incompatible" => 13,
            "condition-violated" => 14,
            "not-coprime" => 15,
            "parse-error" => 16,
            "io-error" => 17,
            _ => 70,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(p, e) => format!("{}: {e}", p.display()),
            CliError::VerifyFailed(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_owned(), e))?;
    }
    fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_owned(), e))
}

fn load_function(path: &Path, ball: Option<&Arc<TreeBall>>) -> CliResult<TreeFunction> {
    Ok(function_from_json(&read(path)?, ball)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn verdict_json(name: &str, v: &Verdict) -> Value {
    json!({
        "check": name,
        "holds": v.holds,
        "domain_radius": v.residual.domain_radius(),
        "residual_support": v.residual.support_size(),
        "residual_max_abs": format_rational(&v.residual.max_abs()),
    })
}

/// Compares the wave's snapshot at `t` with `want` and reports the residual.
fn snapshot_residual(c: &CauchyData, t: i64, want: &TreeFunction) -> CliResult<Value> {
    let got = propagate(c, t)?;
    let v = Verdict::compare(&got, want);
    let mut j = verdict_json(&format!("f_{t}"), &v);
    j["time"] = json!(t);
    Ok(j)
}

fn tree_info(q: u32, radius: usize) -> CliResult<()> {
    let ball = TreeBall::new(q, radius)?;
    println!("q = {q} (degree {}), R = {radius}", q + 1);
    println!("vertices: {}", ball.len());
    println!("layer  size  cumulative");
    for m in 0..=radius {
        let size = sphere_size(q, m).expect("ball exists");
        let cum = ball_size(q, m).expect("ball exists");
        println!("{m:>5}  {size:>4}  {cum:>10}");
    }
    println!("operator degree -> domain radius of the result");
    for d in 0..=radius {
        println!("{d:>15} -> {}", radius - d);
    }
    Ok(())
}

fn snapshot_name(t: i64) -> String {
    format!("snapshot_t{t}")
}

fn simulate(cauchy: &Path, times: &[i64], out: &Path, csv: bool) -> CliResult<()> {
    let c = cauchy_from_json(&read(cauchy)?, None)?;
    create_dir(out)?;
    for &t in times {
        let f = propagate(&c, t)?;
        let base = snapshot_name(t);
        write(&out.join(format!("{base}.json")), &function_to_json(&f))?;
        if csv {
            write(&out.join(format!("{base}.csv")), &function_to_csv(&f))?;
        }
        println!("t={t}: domain radius {}", f.domain_radius());
    }
    Ok(())
}

fn finish_reconstruction(c: &CauchyData, checks: Vec<Value>, out: &Path) -> CliResult<()> {
    create_dir(out)?;
    write(&out.join("cauchy.json"), &cauchy_to_json(c))?;
    let passed = checks.iter().all(|v| v["holds"] == json!(true));
    let report = json!({ "passed": passed, "residuals": checks });
    write(&out.join("report.json"), &pretty(&report))?;
    print!("{}", pretty(&report));
    if passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed("reconstructed wave does not reproduce its inputs".into()))
    }
}

fn reconstruct(cmd: &Reconstruct) -> CliResult<()> {
    match cmd {
        Reconstruct::Two { g, h, k, policy, out } => {
            let g = load_function(g, None)?;
            let h = load_function(h, Some(g.ball()))?;
            let c = two_snapshot_solve(&g, &h, *k, *policy)?;
            let checks = vec![snapshot_residual(&c, 0, &g)?, snapshot_residual(&c, *k as i64, &h)?];
            finish_reconstruction(&c, checks, out)
        }
        Reconstruct::Three { f, g, h, k, l, policy, out } => {
            let f = load_function(f, None)?;
            let g = load_function(g, Some(f.ball()))?;
            let h = load_function(h, Some(f.ball()))?;
            let c = three_snapshot_solve(&f, &g, &h, *k, *l, *policy)?;
            let checks = vec![
                snapshot_residual(&c, 0, &f)?,
                snapshot_residual(&c, *k as i64, &g)?,
                snapshot_residual(&c, *l as i64, &h)?,
            ];
            finish_reconstruction(&c, checks, out)
        }
    }
}

fn pompeiu(cmd: &Pompeiu) -> CliResult<()> {
    match cmd {
        Pompeiu::Check { k, l, q, g, h } => {
            let coprime = match pompeiu_bezout(*k, *l, *q) {
                Ok(_) => true,
                Err(Error::ConditionViolated { .. } | Error::NotCoprime { .. }) => false,
                Err(e) => return Err(e.into()),
            };
            let mut report = json!({
                "k": k, "l": l, "q": q,
                "condition": pompeiu_condition(*k, *l, *q),
                "coprime": coprime,
            });
            if let (Some(g), Some(h)) = (g, h) {
                let g = load_function(g, None)?;
                let h = load_function(h, Some(g.ball()))?;
                if g.q() != *q {
                    return Err(Error::InvalidParameter(format!("--q {q} but input files have q={}", g.q())).into());
                }
                let v = two_circle_check(&g, &h, *k, *l)?;
                report["targets"] = verdict_json(&format!("mu_{l} g = mu_{k} h"), &v);
            }
            print!("{}", pretty(&report));
            Ok(())
        }
        Pompeiu::Solve { g, h, k, l, out } => {
            let g = load_function(g, None)?;
            let h = load_function(h, Some(g.ball()))?;
            let f = two_circle_solve(&g, &h, *k, *l)?;
            let (a, b) = verify_two_circle(&f, &g, &h, *k, *l)?;
            create_dir(out)?;
            write(&out.join("f.json"), &function_to_json(&f))?;
            let report = json!({
                "passed": a.holds && b.holds,
                "domain_radius": f.domain_radius(),
                "residuals": [
                    verdict_json(&format!("mu_{k} f = g"), &a),
                    verdict_json(&format!("mu_{l} f = h"), &b),
                ],
            });
            write(&out.join("report.json"), &pretty(&report))?;
            print!("{}", pretty(&report));
            Ok(())
        }
    }
}

fn verify(suite: &str, qs: &[u32], radius: usize, seed: u64, out: Option<&Path>, inject_fault: bool) -> CliResult<()> {
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for &q in qs {
        let cfg = VerifyConfig {
            q,
            radius,
            seed,
            inject_fault,
        };
        let rep = run_suite(suite, &cfg)?;
        for c in rep.failures() {
            failed.push(format!("q={q}: {} (support {}, max |residual| {})", c.name, c.residual_support, c.residual_max_abs));
        }
        reports.push(rep);
    }
    let text = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        pretty(&serde_json::to_value(&reports).expect("reports serialize"))
    };
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if failed.is_empty() {
        Ok(())
    } else {
        for f in &failed {
            eprintln!("FAIL {f}");
        }
        Err(CliError::VerifyFailed(format!("{} case(s) of suite '{suite}' failed", failed.len())))
    }
}

fn new_ball(b: &BallArgs) -> CliResult<(Arc<TreeBall>, RandomRationals)> {
    Ok((Arc::new(TreeBall::new(b.q, b.radius)?), RandomRationals::new(b.seed)))
}

fn generate(cmd: &Generate) -> CliResult<()> {
    match cmd {
        Generate::Function { ball, out } => {
            let (b, mut rng) = new_ball(ball)?;
            write(out, &function_to_json(&rng.function(&b, ball.radius)?))
        }
        Generate::Cauchy { ball, out } => {
            let (b, mut rng) = new_ball(ball)?;
            let f0 = rng.function(&b, ball.radius)?;
            let f1 = rng.function(&b, ball.radius)?;
            write(out, &cauchy_to_json(&CauchyData::new(f0, f1)?))
        }
        Generate::Snapshots { ball, times, out } => {
            if let Some(t) = times.iter().find(|&&t| t < 0) {
                return Err(Error::InvalidParameter(format!("snapshot times must be nonnegative, got {t}")).into());
            }
            let (b, mut rng) = new_ball(ball)?;
            let c = CauchyData::new(rng.function(&b, ball.radius)?, rng.function(&b, ball.radius)?)?;
            let worst = times.iter().map(|&t| snapshot_shrink(t)).max().unwrap_or(0);
            let r = ball.radius.checked_sub(worst).ok_or(Error::DomainTooSmall {
                needed: worst,
                available: ball.radius,
            })?;
            create_dir(out)?;
            write(&out.join("cauchy.json"), &cauchy_to_json(&c))?;
            for &t in times {
                let f = propagate(&c, t)?.restrict(r)?;
                write(&out.join(format!("{}.json", snapshot_name(t))), &function_to_json(&f))?;
            }
            Ok(())
        }
        Generate::Means { ball, k, l, out } => {
            let (b, mut rng) = new_ball(ball)?;
            let f = rng.function(&b, ball.radius)?;
            let r = ball.radius.checked_sub((*k).max(*l)).ok_or(Error::DomainTooSmall {
                needed: (*k).max(*l),
                available: ball.radius,
            })?;
            create_dir(out)?;
            write(&out.join("f.json"), &function_to_json(&f))?;
            write(&out.join("g.json"), &function_to_json(&mean_value(&f, *k)?.restrict(r)?))?;
            write(&out.join("h.json"), &function_to_json(&mean_value(&f, *l)?.restrict(r)?))?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::TreeInfo { q, radius } => tree_info(q, radius),
        Command::Simulate { cauchy, times, out, csv } => simulate(&cauchy, &times, &out, csv),
        Command::Reconstruct(cmd) => reconstruct(&cmd),
        Command::Pompeiu(cmd) => pompeiu(&cmd),
        Command::Verify {
            suite,
            q,
            radius,
            seed,
            out,
            inject_fault,
        } => verify(&suite, &q, radius, seed, out.as_deref(), inject_fault),
        Command::Generate(cmd) => generate(&cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = json!({ "error": e.code(), "message": e.message() });
            eprintln!("{line}");
            ExitCode::from(e.status())
        }
    }
}
