//! The full check suite behind `logjump verify`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use logjump::algebra::{Field, PrimeField};
use logjump::forms::curves_through;
use logjump::geom::{plane_points, PointConfig};
use logjump::intersect::{length_parts, tangency_degree, tangency_degree_closed_form};
use logjump::jumping::{
    base_locus_equality, case_of, containment_monoidal_on, general_config, jumping_scan, ninth_point,
    pinceau_factorization, random_extra_point, FatPointTests, JumpingReport, ScanOptions,
};
use logjump::steiner::{jumping_order, splitting_type, steiner_pencil};

use crate::CliResult;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub threads: usize,
    pub retries: usize,
    /// Extra points whose monoidal curves are intersected.
    pub trials: usize,
}

/// Random points checked against the fat-point description, on top of `Z ∪ Γ`.
pub const FAT_POINT_SAMPLE: usize = 500;
/// Extra points whose monoidal curves must contain `Z ∪ Γ`.
pub const CONTAINMENT_TRIALS: usize = 5;
pub const TANGENCY_N_MAX: u64 = 12;
pub const LENGTH_N_MAX: u64 = 50;

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

struct Checks(BTreeMap<String, bool>);

impl Checks {
    fn put(&mut self, key: impl Into<String>, ok: bool) {
        self.0.insert(key.into(), ok);
    }

    fn scan(&mut self, prefix: &str, r: &JumpingReport<PrimeField>) {
        for (k, v) in &r.verdicts {
            self.put(format!("{prefix}.{k}"), *v);
        }
    }
}

fn scan(field: &PrimeField, count: usize, seed: u64, opts: &VerifyOptions) -> CliResult<JumpingReport<PrimeField>> {
    let g = general_config(field, count, seed, opts.retries)?;
    let so = ScanOptions { threads: opts.threads, elimination_seed: seed, retries: opts.retries };
    let mut r = jumping_scan(&g.config, &so)?;
    r.reseeds = g.reseeds;
    Ok(r)
}

/// Jumping iff fat point off `Z`, and splitting type `(1, m − 2)` on `Z`,
/// over a random sample plus all of `Z ∪ Γ`.
fn fat_point_sample(r: &JumpingReport<PrimeField>, rng: &mut ChaCha8Rng) -> CliResult<bool> {
    let z = &r.config;
    let field = z.field();
    let sp = steiner_pencil(z)?;
    let fat = FatPointTests::new(z)?;
    let all = plane_points(field);
    let mut sample: Vec<_> = (0..FAT_POINT_SAMPLE).map(|_| all[rng.gen_range(0..all.len())].clone()).collect();
    sample.extend(z.points().iter().cloned());
    sample.extend(r.gamma.iter().cloned());
    for x in &sample {
        let split = splitting_type(&sp, x)?;
        let ok = if z.contains(x) { split.eps1 == 1 } else { (split.order() >= 1) == fat.any(field, x) };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn eight_point_checks(r: &JumpingReport<PrimeField>, seed: u64, opts: &VerifyOptions, c: &mut Checks) -> CliResult<()> {
    let z: &PointConfig<PrimeField> = &r.config;
    let field = z.field();
    let gamma = &r.gamma;

    c.put("eight.fat_point_sample", fat_point_sample(r, &mut stream_rng(seed, 2))?);

    let ninth = ninth_point(z, &mut stream_rng(seed, 3), opts.retries)?;
    let cubics = curves_through(z, 3)?;
    c.put("ninth.base_point", cubics.basis().iter().all(|f| field.is_zero(&f.eval(field, &ninth.point))));
    c.put("ninth.outside_z", !z.contains(&ninth.point));
    c.put("ninth.outside_gamma", !gamma.contains(&ninth.point));
    c.put("ninth.not_jumping", jumping_order(&steiner_pencil(z)?, &ninth.point)? == 0);

    let mut rng = stream_rng(seed, 4);
    let mut contained = true;
    for _ in 0..CONTAINMENT_TRIALS {
        let (x, _) = random_extra_point(z, &mut rng, opts.retries)?;
        contained &= containment_monoidal_on(z, &x, gamma)?;
    }
    c.put("monoidal.contains_z_and_gamma", contained);
    c.put("monoidal.base_locus", base_locus_equality(z, opts.trials, &mut rng, opts.retries)?.equal());

    let mut factors = true;
    for x in gamma {
        factors &= pinceau_factorization(z, x)?.holds();
    }
    c.put("gamma.pencil_factorization", factors);
    Ok(())
}

fn seed_report(field: &PrimeField, seed: u64, opts: &VerifyOptions) -> CliResult<Value> {
    let mut c = Checks(BTreeMap::new());

    let eight = scan(field, 8, seed, opts)?;
    c.scan("eight", &eight);
    eight_point_checks(&eight, seed, opts, &mut c)?;

    let seven = scan(field, 7, seed, opts)?;
    c.scan("seven", &seven);

    let six = scan(field, 6, seed, opts)?;
    c.scan("six", &six);
    let z_only = six.records.iter().all(|r| r.in_z == (r.order == 1) && r.order <= 1);
    c.put("six.jumping_set_is_z", six.counts.jumping == 6 && six.gamma.is_empty() && z_only);

    let four = scan(field, 4, seed, opts)?;
    c.scan("four", &four);
    c.put("four.no_jumping_lines", four.counts.jumping == 0);

    let all_pass = c.0.values().all(|&v| v);
    Ok(json!({
        "seed": seed,
        "reseeds": {"eight": eight.reseeds, "seven": seven.reseeds, "six": six.reseeds, "four": four.reseeds},
        "gamma_rational": eight.gamma.len(),
        "jumping_points": {"eight": eight.counts.jumping, "seven": seven.counts.jumping},
        "checks": c.0,
        "all_pass": all_pass,
    }))
}

/// Degree formula for `n = 2..=12` and the length identity for `n = 2..=50`.
pub fn formula_checks() -> CliResult<BTreeMap<String, bool>> {
    let mut out = BTreeMap::new();
    let mut deg_ok = true;
    for n in 2..=TANGENCY_N_MAX {
        let t = tangency_degree(n)?;
        deg_ok &= t.dim == 2 * n + 2 && t.deg == tangency_degree_closed_form(n);
    }
    out.insert("tangency_degree".to_string(), deg_ok);
    out.insert("tangency_anchor_n3".to_string(), tangency_degree(3)?.deg == 12);
    let length_ok = (2..=LENGTH_N_MAX).all(|n| {
        let (t, z, g) = length_parts(n);
        t == z + g
    });
    out.insert("length_identity".to_string(), length_ok);
    let (n8, _) = case_of(8);
    out.insert("length_eight_points".to_string(), length_parts(n8 as u64) == (36, 24, 12));
    Ok(out)
}

pub fn verify(field: &PrimeField, seeds: &[u64], opts: &VerifyOptions) -> CliResult<Value> {
    let per_seed = seeds.iter().map(|&s| seed_report(field, s, opts)).collect::<CliResult<Vec<_>>>()?;
    let formulas = formula_checks()?;
    let all_pass =
        per_seed.iter().all(|r| r["all_pass"].as_bool() == Some(true)) && formulas.values().all(|&v| v);
    Ok(json!({
        "field": field.spec().to_string(),
        "seeds": per_seed,
        "formulas": formulas,
        "all_pass": all_pass,
    }))
}
