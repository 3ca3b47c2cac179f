use std::path::Path;
use std::process::{Command, Output};

use logjump::algebra::Rationals;
use logjump::forms::monoidal_det;
use logjump::geom::PointConfig;
use logjump_cli::render::{affine_evaluator, marching_squares, Window};
use logjump_cli::{parse_seeds, CliError};
use serde_json::Value;

fn logjump(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logjump")).args(args).output().unwrap()
}

fn gen(dir: &Path, name: &str, count: usize, field: &str, seed: u64) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let out = logjump(&["gen", "--count", &count.to_string(), "--field", field, "--seed", &seed.to_string(), "--out", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn read_json(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_writes_a_replayable_config() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a.json", 8, "fp:101", 1);
    let b = gen(dir.path(), "b.json", 8, "fp:101", 1);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = read_json(&a);
    assert_eq!(v["field"], "fp:101");
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
    assert_eq!(v["seed"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(logjump(&["--help"]).status.code(), Some(0));
    assert_eq!(logjump(&["gen"]).status.code(), Some(1));
    assert_eq!(logjump(&["gen", "--count", "8", "--field", "fp:100"]).status.code(), Some(1));
    assert_eq!(logjump(&["gen", "--count", "3"]).status.code(), Some(1));
    // P²(F5) has 31 points, too few for eight
    assert_eq!(logjump(&["gen", "--count", "8", "--field", "fp:5"]).status.code(), Some(2));
    assert_eq!(logjump(&["jump", "--config", "/nonexistent/z.json"]).status.code(), Some(1));
    assert_eq!(logjump(&["degrees", "--format", "svg"]).status.code(), Some(1));

    assert_eq!(CliError::Verdict("x".into()).exit_code(), 3);
    assert_eq!(CliError::Core(logjump::Error::NotSquarefree).exit_code(), 2);
    assert_eq!(CliError::Core(logjump::Error::Parse("x".into())).exit_code(), 1);
}

#[test]
fn jump_reports_the_example_accounting() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = gen(dir.path(), "z.json", 8, "fp:101", 1);
    let out = logjump(&["jump", "--config", &cfg, "--seed", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["length_accounting"], true);
    assert_eq!(v["counts"]["expected_total"], 36);
    assert_eq!(v["counts"]["z_length"], 24);
    assert_eq!(v["counts"]["gamma_closure"], 12);

    let csv = logjump(&["jump", "--config", &cfg, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("x0,x1,x2,eps1,eps2,order,in_z,in_gamma"));
}

#[test]
fn degrees_table_matches_closed_forms() {
    let out = logjump(&["degrees", "--n-max", "8"]);
    assert!(out.status.success());
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        let n = r["n"].as_u64().unwrap();
        assert_eq!(r["dim"], 2 * n + 2);
        assert_eq!(r["deg"], (n + 1) * n * (n - 1) * (n - 2) / 2);
        assert_eq!(r["jumping_length"], r["z_part"].as_u64().unwrap() + r["gamma_part"].as_u64().unwrap());
    }
}

#[test]
fn monoidal_gamma_and_pencil4() {
    let dir = tempfile::tempdir().unwrap();
    let seven = gen(dir.path(), "z7.json", 7, "fp:101", 2);
    let v: Value = serde_json::from_slice(&logjump(&["monoidal", "--config", &seven]).stdout).unwrap();
    assert_eq!(v["degree"], 6);
    assert_eq!(v["through_z"], true);

    let eight = gen(dir.path(), "z8.json", 8, "fp:101", 2);
    let g: Value = serde_json::from_slice(&logjump(&["gamma", "--config", &eight]).stdout).unwrap();
    assert_eq!(g["count"], 4);

    let out = logjump(&["pencil4", "--config", &eight, "--seed", "2"]);
    assert!(out.status.success());
    let p: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(p["eliminant"]["deg_r12"], 12);
    assert_eq!(p["gamma_closure"], 12);
    assert_eq!(p["ninth_point_is_base_point"], true);
}

#[test]
fn render_draws_the_conic_through_five_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = gen(dir.path(), "q5.json", 5, "q", 1);
    let svg_path = dir.path().join("c.svg");
    let out = logjump(&["render", "--config", &cfg, "--format", "svg", "--out", svg_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 5);
    assert!(svg.contains("degree 2"));

    let z = PointConfig::from_json(Rationals, &read_json(&cfg)).unwrap();
    let conic = monoidal_det(&z).unwrap();
    let f = affine_evaluator(&conic);
    let w = Window { x0: -40.0, x1: 40.0, y0: -40.0, y1: 40.0 };
    let segs = marching_squares(&f, &w, 400);
    assert!(!segs.is_empty());
    // scale-free residual: |f| against the size of its gradient times a grid cell
    let cell = 80.0 / 400.0;
    for (a, _) in segs {
        let h = 1e-6;
        let gx = (f(a.0 + h, a.1) - f(a.0 - h, a.1)) / (2.0 * h);
        let gy = (f(a.0, a.1 + h) - f(a.0, a.1 - h)) / (2.0 * h);
        assert!(f(a.0, a.1).abs() <= (gx.hypot(gy)) * cell + 1e-9);
    }
}

#[test]
fn render_seven_points_and_rejects_prime_fields() {
    let dir = tempfile::tempdir().unwrap();
    let q7 = gen(dir.path(), "q7.json", 7, "q", 1);
    let out = logjump(&["render", "--config", &q7, "--format", "svg"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("degree 6"));
    // points on the line at infinity have no marker
    let affine = read_json(&q7)["points"].as_array().unwrap().iter().filter(|p| p[2] != "0" && p[2] != 0).count();
    assert_eq!(svg.matches("<circle").count(), affine);

    let fp = gen(dir.path(), "f5.json", 5, "fp:101", 1);
    assert_eq!(logjump(&["render", "--config", &fp, "--format", "svg"]).status.code(), Some(1));
}

#[test]
fn verify_on_one_seed() {
    let out = logjump(&["verify", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], true);
    let checks = v["seeds"][0]["checks"].as_object().unwrap();
    assert!(checks.values().all(|b| b == true));
    assert!(checks.len() > 30);
}

#[test]
fn seed_lists() {
    assert_eq!(parse_seeds("1..3").unwrap(), vec![1, 2, 3]);
    assert_eq!(parse_seeds("7").unwrap(), vec![7]);
    assert_eq!(parse_seeds("2, 5").unwrap(), vec![2, 5]);
    assert!(parse_seeds("3..1").is_err());
    assert!(parse_seeds("x").is_err());
}
