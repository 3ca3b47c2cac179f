//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All checks are exact; the only tolerances are wall-clock budgets.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logjump::algebra::{Field, PrimeField};
use logjump::forms::{curves_through, fat_point_dim, monoidal_det};
use logjump::geom::{plane_points, PointConfig};
use logjump::intersect::{length_parts, tangency_degree, tangency_degree_closed_form};
use logjump::jumping::{
    base_locus_equality, containment_monoidal_on, elimination_rng, general_config, jumping_scan, ninth_point,
    pinceau_factorization, random_extra_point, JumpingReport, ScanOptions,
};
use logjump::steiner::{jumping_order, splitting_type, steiner_pencil};

const P: u64 = 101;
const SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
const RETRIES: usize = 100;
const PLANE_POINTS: usize = (P * P + P + 1) as usize;
const FAT_POINT_SAMPLE: usize = 500;
const CONTAINMENT_TRIALS: usize = 5;
const BASE_LOCUS_TRIALS: usize = 4;

const BUDGET_SCAN_PER_SEED: Duration = Duration::from_secs(120);
const BUDGET_ELIMINATION: Duration = Duration::from_secs(60);
const BUDGET_FORMULAS: Duration = Duration::from_secs(1);

type Report = JumpingReport<PrimeField>;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn scan(m: usize, seed: u64) -> (Report, Duration) {
    let start = Instant::now();
    let g = general_config(&field(), m, seed, RETRIES).unwrap();
    let r = jumping_scan(&g.config, &ScanOptions { threads: 0, elimination_seed: seed, retries: RETRIES }).unwrap();
    (r, start.elapsed())
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Jumping set `Z ⊔ Γ`, order 2 on `Z`, 1 on `Γ`, 0 elsewhere.
fn odd_case_jumping_set(runs: &[(Report, Duration)]) -> Outcome {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    for (r, t) in runs {
        slowest = slowest.max(*t);
        ok &= r.counts.scanned == PLANE_POINTS && *t < BUDGET_SCAN_PER_SEED;
        for key in ["jumping_set_is_z_union_gamma", "order_on_z", "order_on_gamma", "gamma_disjoint_from_z"] {
            ok &= r.verdicts[key];
        }
        let z: BTreeSet<_> = r.config.points().iter().cloned().collect();
        let gamma: BTreeSet<_> = r.gamma.iter().cloned().collect();
        ok &= z.is_disjoint(&gamma);
        let jumping: BTreeSet<_> = r.records.iter().filter(|x| x.order >= 1).map(|x| x.point.clone()).collect();
        ok &= jumping == z.union(&gamma).cloned().collect();
        ok &= r.records.iter().all(|x| x.order == if x.in_z { 2 } else if x.in_gamma { 1 } else { 0 });
    }
    outcome(ok, format!("{} seeds, slowest scan {:.2?}", runs.len(), slowest))
}

/// `36 = 8·3 + 12` and the degree-16/4/12 elimination.
fn example_counts(runs: &[(Report, Duration)]) -> Outcome {
    let mut ok = length_parts(4) == (36, 24, 12);
    let start = Instant::now();
    for (r, _) in runs {
        ok &= r.counts.z_length == 24 && r.counts.gamma_closure == Some(12);
        ok &= r.counts.z_length + r.counts.gamma_closure.unwrap_or(0) == 36;
        for key in [
            "length_accounting",
            "eliminant_degrees",
            "eliminant_squarefree",
            "eliminant_profile_sum",
            "eliminant_rational_roots_lift",
        ] {
            ok &= r.verdicts[key];
        }
        let el = r.eliminant.as_ref().expect("eliminant summary");
        ok &= el["deg_r16"] == 16 && el["deg_r4"] == 4 && el["deg_r12"] == 12;
    }
    ok &= start.elapsed() < BUDGET_ELIMINATION;
    let closures: Vec<_> = runs.iter().map(|(r, _)| r.gamma.len()).collect();
    outcome(ok, format!("rational points of Γ per seed {closures:?}, 12 over the closure"))
}

/// Seven points: jumping set equals the zero set of the degree-6 monoidal determinant.
fn even_case_jumping_set() -> Outcome {
    let (r, t) = scan(7, 1);
    let d = monoidal_det(&r.config).unwrap();
    let f = r.config.field();
    let zero_set: BTreeSet<_> = plane_points(f).into_iter().filter(|x| f.is_zero(&d.eval(f, x))).collect();
    let jumping: BTreeSet<_> = r.records.iter().filter(|x| x.order >= 1).map(|x| x.point.clone()).collect();
    let ok = d.degree() == 6 && !d.is_zero(f) && zero_set == jumping && t < BUDGET_SCAN_PER_SEED;
    outcome(ok, format!("{} points on the sextic, scan {t:.2?}", jumping.len()))
}

/// Jumping iff some `h⁰(J_Z ⊗ m_x^a(a+1)) ≥ 1`, `a < ⌊(m−1)/2⌋`, off `Z`. On `Z`
/// the fat-point count is flagged; there the splitting type must be `(1, m − 2)`.
fn fat_point_equivalence(runs: &[(Report, Duration)]) -> Outcome {
    let seven = scan(7, 1).0;
    let mut ok = true;
    let mut checked = 0;
    for r in runs.iter().map(|(r, _)| r).chain([&seven]) {
        let z: &PointConfig<PrimeField> = &r.config;
        let f = z.field();
        let m = z.len();
        let sp = steiner_pencil(z).unwrap();
        let all = plane_points(f);
        let mut rng = ChaCha8Rng::seed_from_u64(r.counts.jumping as u64 + m as u64);
        let mut sample: Vec<_> = (0..FAT_POINT_SAMPLE).map(|_| all[rng.gen_range(0..all.len())].clone()).collect();
        sample.extend(z.points().iter().cloned());
        sample.extend(r.gamma.iter().cloned());
        for x in &sample {
            let split = splitting_type(&sp, x).unwrap();
            let order = split.order();
            let mut flagged = false;
            let mut fat = false;
            for a in 1..(m - 1) / 2 {
                let d = fat_point_dim(z, x, a, a + 1).unwrap();
                flagged |= d.on_config;
                fat |= d.dim >= 1;
            }
            ok &= if flagged { split.eps1 == 1 && order >= 1 } else { (order >= 1) == fat };
            checked += 1;
        }
    }
    outcome(ok, format!("{checked} points"))
}

/// Four points: nothing jumps. Six points: exactly `Z`, order 1, `Γ = ∅`.
fn degenerate_anchors() -> Outcome {
    let mut ok = true;
    for seed in 1..=3 {
        let (four, _) = scan(4, seed);
        ok &= four.all_pass() && four.counts.jumping == 0 && four.records.iter().all(|x| x.order == 0);
        let (six, _) = scan(6, seed);
        ok &= six.all_pass() && six.gamma.is_empty() && six.counts.jumping == 6;
        ok &= six.records.iter().all(|x| x.in_z && x.order == 1);
    }
    outcome(ok, "seeds 1..=3, full plane")
}

fn ninth_point_check(runs: &[(Report, Duration)], seeds: &[u64]) -> Outcome {
    let mut ok = true;
    for ((r, _), &seed) in runs.iter().zip(seeds) {
        let z = &r.config;
        let f = z.field();
        let x = ninth_point(z, &mut elimination_rng(seed), RETRIES).unwrap().point;
        let cubics = curves_through(z, 3).unwrap();
        ok &= cubics.dim() == 2 && cubics.basis().iter().all(|c| f.is_zero(&c.eval(f, &x)));
        ok &= !z.contains(&x) && !r.gamma.contains(&x);
        ok &= jumping_order(&steiner_pencil(z).unwrap(), &x).unwrap() == 0;
    }
    outcome(ok, format!("{} seeds", runs.len()))
}

/// Monoidal curves of `Z ∪ {x}` contain `Z ∪ Γ`, and four of them cut out exactly `Z ∪ Γ`.
fn monoidal_containment(runs: &[(Report, Duration)], seeds: &[u64]) -> Outcome {
    let mut ok = true;
    for ((r, _), &seed) in runs.iter().zip(seeds) {
        let z = &r.config;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..CONTAINMENT_TRIALS {
            let (x, _) = random_extra_point(z, &mut rng, RETRIES).unwrap();
            ok &= containment_monoidal_on(z, &x, &r.gamma).unwrap();
        }
        let locus = base_locus_equality(z, BASE_LOCUS_TRIALS, &mut rng, RETRIES).unwrap();
        ok &= locus.equal() && locus.expected.len() == 8 + r.gamma.len();
    }
    outcome(ok, format!("{CONTAINMENT_TRIALS} containments and a {BASE_LOCUS_TRIALS}-curve intersection per seed"))
}

/// At each rational `x ∈ Γ`: the quartics through `Z` triple at `x` share a
/// cubic through `Z` singular at `x`, with linear quotients through `x`.
fn pencil_factorization(runs: &[(Report, Duration)]) -> Outcome {
    let mut ok = true;
    let mut points = 0;
    for (r, _) in runs {
        for x in &r.gamma {
            ok &= pinceau_factorization(&r.config, x).unwrap().holds();
            points += 1;
        }
    }
    outcome(ok && points > 0, format!("{points} points of Γ"))
}

fn formulas() -> Outcome {
    let start = Instant::now();
    let mut ok = tangency_degree(3).unwrap().deg == 12;
    for n in 2..=12u64 {
        let t = tangency_degree(n).unwrap();
        ok &= t.dim == 2 * n + 2 && t.deg == (n + 1) * n * (n - 1) * (n - 2) / 2;
        ok &= t.deg == tangency_degree_closed_form(n);
    }
    let binom2 = |k: u64| k * k.saturating_sub(1) / 2;
    for n in 2..=50u64 {
        let (total, z, g) = length_parts(n);
        ok &= total == binom2((n - 1) * (n - 1));
        ok &= z == 2 * n * binom2(n - 1) && g == n * (n - 1) * (n - 2) * n.saturating_sub(3) / 2;
        ok &= total == z + g;
    }
    let t = start.elapsed();
    outcome(ok && t < BUDGET_FORMULAS, format!("n ≤ 12 degrees, n ≤ 50 lengths, {t:.2?}"))
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_logjump")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("z.json");
    let cfg = cfg.to_str().unwrap();
    let mut ok = true;
    let gen = ["gen", "--count", "8", "--field", "fp:101", "--seed", "3"];
    let (c1, a) = run(&gen);
    let (c2, b) = run(&gen);
    ok &= c1 == 0 && c2 == 0 && a == b;
    std::fs::write(cfg, &a).unwrap();
    for format in ["json", "csv"] {
        let args = ["jump", "--config", cfg, "--seed", "3", "--format", format];
        let (c1, a) = run(&args);
        let (c2, b) = run(&args);
        ok &= c1 == 0 && c2 == 0 && a == b && !a.is_empty();
    }
    let (v1, a) = run(&["verify", "--seed", "1..10"]);
    let (v2, b) = run(&["verify", "--seed", "1..10", "--threads", "2"]);
    ok &= v1 == 0 && v2 == 0 && a == b;
    outcome(ok, format!("verify exit codes {v1}, {v2}"))
}

fn main() {
    let seeds: Vec<u64> = SEEDS.collect();
    let eight: Vec<_> = seeds.iter().map(|&s| scan(8, s)).collect();

    let results = [
        ("1 odd-case jumping set, exhaustive over P²(F101)", odd_case_jumping_set(&eight)),
        ("2 example counts and eliminant", example_counts(&eight)),
        ("3 even-case jumping set, exhaustive", even_case_jumping_set()),
        ("4 fat-point equivalence on samples", fat_point_equivalence(&eight)),
        ("5 degenerate anchors |Z| = 4, 6", degenerate_anchors()),
        ("6 ninth base point", ninth_point_check(&eight, &seeds)),
        ("7 monoidal curves through Z ∪ Γ", monoidal_containment(&eight, &seeds)),
        ("8 pencil factorization at Γ", pencil_factorization(&eight)),
        ("9 degree and length formulas", formulas()),
        ("10 determinism and verify", determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
