//! Command-line driver: generates configurations, runs the scans and checks,
//! and writes JSON, CSV or SVG artifacts.

pub mod render;
pub mod verify;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logjump::algebra::{Field, FieldSpec, FiniteField, PrimeField, Rationals};
use logjump::forms::{curves_through, gamma_minors, monoidal_det};
use logjump::geom::{field_spec_of_json, PointConfig};
use logjump::intersect::{length_parts, tangency_degree};
use logjump::jumping::{
    eliminant_verdicts, elimination_rng, gamma_points, general_config, jumping_scan, ninth_point, pencil4_eliminant,
    ScanOptions,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("verdict failed: {0}")]
    Verdict(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] logjump::Error),
}

impl CliError {
    /// 1 for usage and I/O, 2 for degenerate input, 3 for a failed verdict.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Degenerate(_) => 2,
            CliError::Core(e) if e.is_degenerate_input() => 2,
            CliError::Verdict(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "logjump", version, about = "Jumping lines of logarithmic bundles from point configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for scans (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = 100)]
    pub retries: usize,
}

#[derive(Debug, Args)]
pub struct ConfigInput {
    /// Configuration JSON written by `gen`.
    #[arg(long)]
    pub config: PathBuf,
    /// Seed of the coordinate changes used by elimination.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a configuration of points in general position.
    Gen {
        #[arg(long)]
        count: usize,
        /// `q` or `fp:<p>`.
        #[arg(long, default_value = "fp:101")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Splitting type at every point of the plane, checked against Z, Γ and the monoidal curve.
    Jump {
        #[command(flatten)]
        input: ConfigInput,
        #[command(flatten)]
        common: Common,
    },
    /// Monoidal curve of an odd configuration.
    Monoidal {
        #[command(flatten)]
        input: ConfigInput,
        #[command(flatten)]
        common: Common,
    },
    /// Extra jumping points Γ of an even configuration.
    Gamma {
        #[command(flatten)]
        input: ConfigInput,
        #[command(flatten)]
        common: Common,
    },
    /// Elimination for eight points: the degree-12 eliminant of Γ and the ninth base point.
    Pencil4 {
        #[command(flatten)]
        input: ConfigInput,
        #[command(flatten)]
        common: Common,
    },
    /// Table of dimensions, degrees and lengths for n = 2..n-max.
    Degrees {
        #[arg(long, default_value_t = 12)]
        n_max: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Full check suite over a list of seeds.
    Verify {
        /// A seed, a range `a..b` (inclusive) or a comma-separated list.
        #[arg(long, default_value = "1..10")]
        seed: String,
        /// Prime of the scan field.
        #[arg(long, default_value_t = FieldSpec::SCAN_PRIME)]
        p: u64,
        /// Extra points for the base-locus check.
        #[arg(long, default_value_t = 4)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// SVG of the monoidal curve (odd) or the Γ minors (even) over the reals.
    Render {
        #[command(flatten)]
        input: ConfigInput,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `7`, `1..10` or `1,4,9`.
pub fn parse_seeds(s: &str) -> CliResult<Vec<u64>> {
    let bad = |e: std::num::ParseIntError| CliError::Usage(format!("bad seed list `{s}`: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (a.trim().parse::<u64>().map_err(bad)?, b.trim().parse::<u64>().map_err(bad)?);
        if a > b {
            return Err(CliError::Usage(format!("empty seed range `{s}`")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(bad)).collect()
}

pub fn parse_field(s: &str) -> CliResult<FieldSpec> {
    s.parse().map_err(|e: logjump::Error| CliError::Usage(e.to_string()))
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn want_format(common: &Common, allowed: &[Format]) -> CliResult<()> {
    if allowed.contains(&common.format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("format {:?} is not available for this command", common.format)))
    }
}

fn prime_field(spec: FieldSpec, what: &str) -> CliResult<PrimeField> {
    match spec {
        FieldSpec::PrimeField(p) => Ok(PrimeField::new(p)?),
        FieldSpec::Rationals => Err(CliError::Usage(format!("{what} needs a prime field config"))),
    }
}

/// Runs one command, writing its artifact. Verdict failures are reported
/// after the artifact has been written.
pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen { count, field, seed, common } => {
            want_format(&common, &[Format::Json])?;
            if count < 4 {
                return Err(CliError::Usage(format!("--count must be at least 4, got {count}")));
            }
            let retries = common.retries.max(1);
            let doc = match parse_field(&field)? {
                FieldSpec::Rationals => gen_doc(&Rationals, count, seed, retries)?,
                FieldSpec::PrimeField(p) => gen_doc(&PrimeField::new(p)?, count, seed, retries)?,
            };
            emit(common.out.as_deref(), &json_text(&doc))
        }
        Command::Jump { input, common } => {
            want_format(&common, &[Format::Json, Format::Csv])?;
            let doc = read_json(&input.config)?;
            let field = prime_field(field_spec_of_json(&doc)?, "jump")?;
            let z = PointConfig::from_json(field, &doc)?;
            let opts = ScanOptions { threads: common.threads, elimination_seed: input.seed, retries: common.retries };
            let mut report = jumping_scan(&z, &opts)?;
            report.reseeds = doc["reseeds"].as_u64().unwrap_or(0) as usize;
            let text = match common.format {
                Format::Csv => report.to_csv(),
                _ => json_text(&report.to_json()),
            };
            emit(common.out.as_deref(), &text)?;
            verdict(report.all_pass(), "jump")
        }
        Command::Monoidal { input, common } => {
            want_format(&common, &[Format::Json])?;
            let doc = read_json(&input.config)?;
            let text = match field_spec_of_json(&doc)? {
                FieldSpec::Rationals => monoidal_doc(PointConfig::from_json(Rationals, &doc)?)?,
                FieldSpec::PrimeField(p) => monoidal_doc(PointConfig::from_json(PrimeField::new(p)?, &doc)?)?,
            };
            emit(common.out.as_deref(), &json_text(&text))
        }
        Command::Gamma { input, common } => {
            want_format(&common, &[Format::Json])?;
            let doc = read_json(&input.config)?;
            let out = match field_spec_of_json(&doc)? {
                FieldSpec::Rationals => {
                    let z = PointConfig::from_json(Rationals, &doc)?;
                    gamma_doc(&z, None)?
                }
                FieldSpec::PrimeField(p) => {
                    let z = PointConfig::from_json(PrimeField::new(p)?, &doc)?;
                    let pts = gamma_points(&z)?;
                    gamma_doc(&z, Some(pts.iter().map(|x| x.to_json(z.field())).collect()))?
                }
            };
            emit(common.out.as_deref(), &json_text(&out))
        }
        Command::Pencil4 { input, common } => {
            want_format(&common, &[Format::Json])?;
            let doc = read_json(&input.config)?;
            let field = prime_field(field_spec_of_json(&doc)?, "pencil4")?;
            let z = PointConfig::from_json(field, &doc)?;
            let (out, ok) = pencil4_doc(&z, input.seed, common.retries)?;
            emit(common.out.as_deref(), &json_text(&out))?;
            verdict(ok, "pencil4")
        }
        Command::Degrees { n_max, common } => {
            want_format(&common, &[Format::Json])?;
            if n_max < 2 {
                return Err(CliError::Usage(format!("--n-max must be at least 2, got {n_max}")));
            }
            emit(common.out.as_deref(), &json_text(&degrees_table(n_max)?))
        }
        Command::Verify { seed, p, trials, common } => {
            want_format(&common, &[Format::Json])?;
            let seeds = parse_seeds(&seed)?;
            let field = PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
            let opts = verify::VerifyOptions { threads: common.threads, retries: common.retries, trials };
            let report = verify::verify(&field, &seeds, &opts)?;
            emit(common.out.as_deref(), &json_text(&report))?;
            verdict(report["all_pass"].as_bool() == Some(true), "verify")
        }
        Command::Render { input, common } => {
            want_format(&common, &[Format::Svg])?;
            let doc = read_json(&input.config)?;
            if field_spec_of_json(&doc)? != FieldSpec::Rationals {
                return Err(CliError::Usage("render needs a config over q (an ordered field)".into()));
            }
            let z = PointConfig::from_json(Rationals, &doc)?;
            emit(common.out.as_deref(), &render_config(&z)?)
        }
    }
}

fn verdict(ok: bool, what: &str) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Verdict(format!("{what}: at least one check is false")))
    }
}

pub fn gen_doc<F: Field>(field: &F, count: usize, seed: u64, retries: usize) -> CliResult<Value> {
    let g = general_config(field, count, seed, retries)?;
    let mut doc = g.config.to_json();
    doc["seed"] = json!(seed);
    doc["reseeds"] = json!(g.reseeds);
    Ok(doc)
}

fn monoidal_doc<F: Field>(z: PointConfig<F>) -> CliResult<Value> {
    let f = z.field();
    let d = monoidal_det(&z)?;
    let through_z = z.points().iter().all(|x| f.is_zero(&d.eval(f, x)));
    Ok(json!({
        "config": z.to_json(),
        "degree": d.degree(),
        "form": d.to_json(f),
        "through_z": through_z,
    }))
}

fn gamma_doc<F: Field>(z: &PointConfig<F>, points: Option<Vec<Value>>) -> CliResult<Value> {
    let f = z.field();
    let minors = gamma_minors(z)?;
    let mut out = json!({
        "config": z.to_json(),
        "n": z.len() / 2,
        "minors": minors.iter().map(|m| m.to_json(f)).collect::<Vec<_>>(),
    });
    if let Some(pts) = points {
        out["count"] = json!(pts.len());
        out["gamma"] = Value::Array(pts);
    }
    Ok(out)
}

/// Eliminant summary, rational points of Γ and the ninth base point.
pub fn pencil4_doc<F: FiniteField + Sync>(z: &PointConfig<F>, seed: u64, retries: usize) -> CliResult<(Value, bool)>
where
    F::Elem: Send + Sync,
{
    let f = z.field();
    let mut rng = elimination_rng(seed);
    let el = pencil4_eliminant(z, &mut rng, retries)?;
    let gamma = gamma_points(z)?;
    let (verdicts, closure) = eliminant_verdicts(f, &el, &gamma);
    let ninth = ninth_point(z, &mut rng, retries)?;
    let cubics = curves_through(z, 3)?;
    let base = cubics.basis().iter().all(|c| f.is_zero(&c.eval(f, &ninth.point)));
    let ok = verdicts.values().all(|&v| v) && base;
    Ok((
        json!({
            "config": z.to_json(),
            "eliminant": el.summary_json(f),
            "gamma": gamma.iter().map(|x| x.to_json(f)).collect::<Vec<_>>(),
            "gamma_closure": closure,
            "ninth_point": ninth.point.to_json(f),
            "ninth_point_is_base_point": base,
            "verdicts": verdicts,
        }),
        ok,
    ))
}

/// `{n, dim, deg, jumping_length, z_part, gamma_part}` for `n = 2..=n_max`.
pub fn degrees_table(n_max: u64) -> CliResult<Value> {
    let rows = (2..=n_max)
        .map(|n| {
            let t = tangency_degree(n)?;
            let (total, z_part, gamma_part) = length_parts(n);
            Ok(json!({
                "n": n,
                "dim": t.dim,
                "deg": t.deg,
                "jumping_length": total,
                "z_part": z_part,
                "gamma_part": gamma_part,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

pub fn render_config(z: &PointConfig<Rationals>) -> CliResult<String> {
    let m = z.len();
    if m % 2 == 1 {
        let d = monoidal_det(z)?;
        let layer = render::Layer { form: &d, colour: "#1f4e79", label: format!("monoidal curve, degree {}", d.degree()) };
        render::render_svg(z, &[layer])
    } else {
        let minors = gamma_minors(z)?;
        let layers: Vec<_> = minors
            .iter()
            .enumerate()
            .map(|(i, g)| render::Layer { form: g, colour: "#1f4e79", label: format!("minor {i}, degree {}", g.degree()) })
            .collect();
        render::render_svg(z, &layers)
    }
}
