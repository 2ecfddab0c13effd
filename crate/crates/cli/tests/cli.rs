use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn treewave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treewave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = treewave(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Exit status and the machine-readable code from the stderr JSON line.
fn err(args: &[&str]) -> (i32, String) {
    let out = treewave(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    let stderr = String::from_utf8(out.stderr).unwrap();
    let last = stderr.lines().last().expect("an error line");
    let v: Value = serde_json::from_str(last).expect("error line is JSON");
    (out.status.code().unwrap(), v["error"].as_str().unwrap().to_owned())
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn tree_info_counts() {
    for (q, r, n) in [("2", "3", 22), ("1", "4", 9), ("3", "2", 17)] {
        let out = ok(&["tree-info", "--q", q, "--radius", r]);
        assert!(out.contains(&format!("vertices: {n}")), "{out}");
    }
}

#[test]
fn simulate_writes_snapshots() {
    let d = TempDir::new().unwrap();
    let c = p(&d, "c.json");
    ok(&["generate", "cauchy", "--q", "2", "--radius", "5", "--seed", "7", "--out", &c]);
    let out = p(&d, "sim");
    ok(&["simulate", "--cauchy", &c, "--times", "-3,0,1,4", "--out", &out, "--csv"]);
    let f4 = json(&d.path().join("sim/snapshot_t4.json"));
    assert_eq!(f4["domain_radius"], 2);
    assert_eq!(json(&d.path().join("sim/snapshot_t-3.json"))["domain_radius"], 2);
    assert_eq!(json(&d.path().join("sim/snapshot_t1.json"))["domain_radius"], 5);
    // f_0 is the input itself
    let c_json = json(Path::new(&c));
    assert_eq!(json(&d.path().join("sim/snapshot_t0.json")), c_json["f0"]);
    let csv = std::fs::read_to_string(d.path().join("sim/snapshot_t4.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("vertex,layer,value_display"));
    assert_eq!(csv.lines().count(), 1 + 10);
}

#[test]
fn simulate_is_deterministic() {
    let d = TempDir::new().unwrap();
    let c = p(&d, "c.json");
    ok(&["generate", "cauchy", "--q", "3", "--radius", "3", "--seed", "2", "--out", &c]);
    ok(&["simulate", "--cauchy", &c, "--times", "2", "--out", &p(&d, "a")]);
    ok(&["simulate", "--cauchy", &c, "--times", "2", "--out", &p(&d, "b")]);
    let read = |s: &str| std::fs::read(d.path().join(s).join("snapshot_t2.json")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn simulate_rejects_unreachable_time() {
    let d = TempDir::new().unwrap();
    let c = p(&d, "c.json");
    ok(&["generate", "cauchy", "--q", "2", "--radius", "2", "--out", &c]);
    assert_eq!(err(&["simulate", "--cauchy", &c, "--times", "5", "--out", &p(&d, "o")]), (6, "domain-too-small".into()));
}

#[test]
fn reconstruct_two_round_trip() {
    let d = TempDir::new().unwrap();
    let s = p(&d, "s");
    ok(&["generate", "snapshots", "--q", "2", "--radius", "7", "--seed", "5", "--times", "0,3", "--out", &s]);
    let out = p(&d, "r");
    ok(&[
        "reconstruct", "two", "--g", &p(&d, "s/snapshot_t0.json"), "--h", &p(&d, "s/snapshot_t3.json"),
        "--k", "3", "--out", &out,
    ]);
    let report = json(&d.path().join("r/report.json"));
    assert_eq!(report["passed"], true);
    assert_eq!(report["residuals"].as_array().unwrap().len(), 2);
    let c = json(&d.path().join("r/cauchy.json"));
    // f_0 is returned as given
    assert_eq!(c["f0"]["values"], json(&d.path().join("s/snapshot_t0.json"))["values"]);
}

#[test]
fn reconstruct_three_round_trip() {
    let d = TempDir::new().unwrap();
    let s = p(&d, "s");
    ok(&["generate", "snapshots", "--q", "2", "--radius", "8", "--seed", "9", "--times", "0,2,3", "--out", &s]);
    ok(&[
        "reconstruct", "three", "--f", &p(&d, "s/snapshot_t0.json"), "--g", &p(&d, "s/snapshot_t2.json"),
        "--h", &p(&d, "s/snapshot_t3.json"), "--k", "2", "--l", "3", "--policy", "first", "--out", &p(&d, "r"),
    ]);
    let report = json(&d.path().join("r/report.json"));
    assert_eq!(report["passed"], true);
    assert_eq!(report["residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn reconstruct_three_rejects_wrong_triple() {
    let d = TempDir::new().unwrap();
    let s = p(&d, "s");
    let t = p(&d, "t");
    ok(&["generate", "snapshots", "--q", "2", "--radius", "8", "--seed", "1", "--times", "0,2,3", "--out", &s]);
    ok(&["generate", "snapshots", "--q", "2", "--radius", "8", "--seed", "2", "--times", "0,2,3", "--out", &t]);
    let (code, name) = err(&[
        "reconstruct", "three", "--f", &p(&d, "s/snapshot_t0.json"), "--g", &p(&d, "s/snapshot_t2.json"),
        "--h", &p(&d, "t/snapshot_t3.json"), "--k", "2", "--l", "3", "--out", &p(&d, "r"),
    ]);
    assert_eq!((code, name.as_str()), (13, "incompatible"));
}

#[test]
fn ball_mismatch_is_reported() {
    let d = TempDir::new().unwrap();
    ok(&["generate", "function", "--q", "2", "--radius", "4", "--out", &p(&d, "a.json")]);
    ok(&["generate", "function", "--q", "3", "--radius", "4", "--out", &p(&d, "b.json")]);
    let (code, name) = err(&[
        "reconstruct", "two", "--g", &p(&d, "a.json"), "--h", &p(&d, "b.json"), "--k", "2", "--out", &p(&d, "r"),
    ]);
    assert_eq!((code, name.as_str()), (8, "ball-mismatch"));
}

#[test]
fn parse_and_io_errors() {
    let d = TempDir::new().unwrap();
    let bad = p(&d, "bad.json");
    std::fs::write(&bad, "{\"q\": 2}").unwrap();
    assert_eq!(err(&["simulate", "--cauchy", &bad, "--times", "1", "--out", &p(&d, "o")]).1, "parse-error");
    let missing = p(&d, "missing.json");
    assert_eq!(err(&["simulate", "--cauchy", &missing, "--times", "1", "--out", &p(&d, "o")]), (17, "io-error".into()));
}

#[test]
fn pompeiu_solve_round_trip() {
    let d = TempDir::new().unwrap();
    ok(&["generate", "means", "--q", "2", "--radius", "9", "--seed", "4", "--k", "2", "--l", "3", "--out", &p(&d, "m")]);
    ok(&[
        "pompeiu", "solve", "--g", &p(&d, "m/g.json"), "--h", &p(&d, "m/h.json"), "--k", "2", "--l", "3",
        "--out", &p(&d, "o"),
    ]);
    let report = json(&d.path().join("o/report.json"));
    assert_eq!(report["passed"], true);
    let f = json(&d.path().join("o/f.json"));
    let f0 = json(&d.path().join("m/f.json"));
    let r = f["domain_radius"].as_u64().unwrap() as usize;
    let n = f["values"].as_array().unwrap()[..1 + 3 * ((1 << r) - 1)].to_vec();
    assert_eq!(n, f0["values"].as_array().unwrap()[..n.len()].to_vec());
}

#[test]
fn pompeiu_condition_violated() {
    let d = TempDir::new().unwrap();
    ok(&["generate", "means", "--q", "2", "--radius", "8", "--k", "1", "--l", "3", "--out", &p(&d, "m")]);
    let (code, name) = err(&[
        "pompeiu", "solve", "--g", &p(&d, "m/g.json"), "--h", &p(&d, "m/h.json"), "--k", "1", "--l", "3",
        "--out", &p(&d, "o"),
    ]);
    assert_eq!((code, name.as_str()), (14, "condition-violated"));
}

#[test]
fn pompeiu_check_reports() {
    let v: Value = serde_json::from_str(&ok(&["pompeiu", "check", "--k", "4", "--l", "10", "--q", "2"])).unwrap();
    assert_eq!(v["condition"], false);
    assert_eq!(v["coprime"], false);
    let v: Value = serde_json::from_str(&ok(&["pompeiu", "check", "--k", "4", "--l", "10", "--q", "3"])).unwrap();
    assert_eq!(v["condition"], true);
    assert_eq!(v["coprime"], true);

    let d = TempDir::new().unwrap();
    ok(&["generate", "means", "--q", "2", "--radius", "6", "--k", "1", "--l", "2", "--out", &p(&d, "m")]);
    let v: Value = serde_json::from_str(&ok(&[
        "pompeiu", "check", "--k", "1", "--l", "2", "--q", "2", "--g", &p(&d, "m/g.json"), "--h", &p(&d, "m/h.json"),
    ]))
    .unwrap();
    assert_eq!(v["targets"]["holds"], true);
}

#[test]
fn verify_suites_pass_and_fault_fails() {
    let d = TempDir::new().unwrap();
    let out = p(&d, "r.json");
    ok(&["verify", "wave-closed-form", "--q", "2", "--radius", "5", "--seed", "3", "--out", &out]);
    assert_eq!(json(Path::new(&out))["passed"], true);
    let a = ok(&["verify", "imv", "--q", "1,2", "--radius", "4"]);
    let b = ok(&["verify", "imv", "--q", "1,2", "--radius", "4"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    let (code, name) = err(&["verify", "commute", "--q", "2", "--radius", "4", "--inject-fault"]);
    assert_eq!((code, name.as_str()), (1, "verification-failed"));
    assert_eq!(err(&["verify", "nope", "--radius", "4"]), (3, "invalid-parameter".into()));
}

#[test]
fn invalid_ball() {
    assert_eq!(err(&["tree-info", "--q", "0", "--radius", "3"]), (3, "invalid-parameter".into()));
}
