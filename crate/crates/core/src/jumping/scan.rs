//! Exhaustive scans of `P²(𝔽p)`: splitting type at every point, compared
//! against the fat-point description of the jumping lines.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{distinct_degree_profile, rank, Field, FiniteField};
use crate::error::{Error, Result};
use crate::forms::{curves_through, eval_form_matrix, monoidal_det, symbolic_jet_matrix, FormMatrix};
use crate::geom::{plane_points, PointConfig, PointP2};
use crate::intersect::length_parts;
use crate::steiner::{splitting_type, steiner_pencil, SplittingType, SteinerPencil};

use super::eliminant::{pencil4_eliminant, Eliminant};

/// `n` and `ε` with `|Z| = 2n + 1 − ε`.
pub fn case_of(m: usize) -> (usize, usize) {
    (m / 2, 1 - m % 2)
}

/// Order-`(a−1)` symbolic jets of `H⁰(J_Z(a+1))`, one per `a` below the
/// generic index; `x` is jumping off `Z` exactly when one of them drops rank.
pub struct FatPointTests<E> {
    tests: Vec<(usize, FormMatrix<E>, usize)>,
}

impl<E: Clone> FatPointTests<E> {
    pub fn new<F: Field<Elem = E>>(z: &PointConfig<F>) -> Result<Self> {
        let top = (z.len() - 1) / 2;
        let mut tests = Vec::new();
        for a in 1..top {
            let w = curves_through(z, a + 1)?;
            if w.dim() > 0 {
                tests.push((a, symbolic_jet_matrix(&w, a - 1)?, w.dim()));
            }
        }
        Ok(FatPointTests { tests })
    }

    /// `h⁰(J_Z ⊗ m_x^a(a+1))` for the given `a`, if that system is nonempty.
    pub fn dim_at<F: Field<Elem = E>>(&self, field: &F, a: usize, x: &PointP2<E>) -> usize {
        self.tests
            .iter()
            .find(|t| t.0 == a)
            .map_or(0, |(_, m, cols)| cols - rank(field, &eval_form_matrix(field, m, x.coords())))
    }

    /// Whether some `a` below the generic index has `h⁰(J_Z ⊗ m_x^a(a+1)) ≥ 1`.
    pub fn any<F: Field<Elem = E>>(&self, field: &F, x: &PointP2<E>) -> bool {
        self.tests
            .iter()
            .any(|(_, m, cols)| rank(field, &eval_form_matrix(field, m, x.coords())) < *cols)
    }
}

/// Points `x ∉ Z` of `P²(𝔽p)` carrying a degree-`(n−1)` curve through `Z`
/// with multiplicity `n − 2` at `x`, for `|Z| = 2n`; sorted.
pub fn gamma_points<F: FiniteField + Sync>(z: &PointConfig<F>) -> Result<Vec<PointP2<F::Elem>>>
where
    F::Elem: Send + Sync,
{
    let m = z.len();
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Γ is defined for an even number of points, got {m}")));
    }
    let n = m / 2;
    if n <= 3 {
        return Ok(Vec::new());
    }
    let field = z.field();
    let w = curves_through(z, n - 1)?;
    let jets = symbolic_jet_matrix(&w, n - 3)?;
    let mut out: Vec<_> = plane_points(field)
        .into_par_iter()
        .filter(|x| !z.contains(x) && rank(field, &eval_form_matrix(field, &jets, x.coords())) < w.dim())
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRecord<E> {
    pub point: PointP2<E>,
    pub split: SplittingType,
    pub order: usize,
    pub in_z: bool,
    pub in_gamma: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub scanned: usize,
    pub jumping: usize,
    pub z_points: usize,
    /// `Σ binom(h+1, 2)` over `Z`.
    pub z_length: usize,
    pub gamma_rational: usize,
    /// Points of `Γ` over the algebraic closure, certified by elimination.
    pub gamma_closure: Option<usize>,
    pub expected_total: Option<usize>,
    pub expected_z_part: Option<usize>,
    pub expected_gamma_part: Option<usize>,
}

/// Everything a scan found, with a verdict per checked identity.
#[derive(Debug, Clone)]
pub struct JumpingReport<F: Field> {
    pub config: PointConfig<F>,
    pub n: usize,
    pub epsilon: usize,
    /// Points that are jumping, in `Z`, or in `Γ`, in scan order.
    pub records: Vec<PointRecord<F::Elem>>,
    pub histogram: BTreeMap<SplittingType, usize>,
    pub gamma: Vec<PointP2<F::Elem>>,
    pub counts: Counts,
    pub verdicts: BTreeMap<String, bool>,
    /// Witness points for failed pointwise verdicts.
    pub mismatches: Vec<(String, PointP2<F::Elem>)>,
    pub eliminant: Option<Value>,
    pub reseeds: usize,
}

impl<F: Field> JumpingReport<F> {
    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn to_json(&self) -> Value {
        let f = self.config.field();
        json!({
            "config": self.config.to_json(),
            "parity": self.epsilon,
            "n": self.n,
            "records": self.records.iter().map(|r| json!({
                "point": r.point.to_json(f),
                "eps1": r.split.eps1,
                "eps2": r.split.eps2,
                "order": r.order,
                "in_z": r.in_z,
                "in_gamma": r.in_gamma,
            })).collect::<Vec<_>>(),
            "histogram": self.histogram.iter().map(|(s, c)| json!({"eps1": s.eps1, "eps2": s.eps2, "count": c})).collect::<Vec<_>>(),
            "gamma": self.gamma.iter().map(|p| p.to_json(f)).collect::<Vec<_>>(),
            "counts": {
                "scanned": self.counts.scanned,
                "jumping": self.counts.jumping,
                "z_points": self.counts.z_points,
                "z_length": self.counts.z_length,
                "gamma_rational": self.counts.gamma_rational,
                "gamma_closure": self.counts.gamma_closure,
                "expected_total": self.counts.expected_total,
                "expected_z_part": self.counts.expected_z_part,
                "expected_gamma_part": self.counts.expected_gamma_part,
            },
            "verdicts": self.verdicts,
            "mismatches": self.mismatches.iter().map(|(w, p)| json!({"check": w, "point": p.to_json(f)})).collect::<Vec<_>>(),
            "eliminant": self.eliminant,
            "reseeds": self.reseeds,
        })
    }

    /// `x0,x1,x2,eps1,eps2,order,in_z,in_gamma`, one line per record.
    pub fn to_csv(&self) -> String {
        let f = self.config.field();
        let mut out = String::from("x0,x1,x2,eps1,eps2,order,in_z,in_gamma\n");
        for r in &self.records {
            let c: Vec<String> = r.point.coords().iter().map(|c| f.elem_to_json(c).to_string().replace('"', "")).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                c[0], c[1], c[2], r.split.eps1, r.split.eps2, r.order, r.in_z, r.in_gamma
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; zero uses the global pool.
    pub threads: usize,
    /// Seed of the stream the elimination draws coordinate changes from.
    pub elimination_seed: u64,
    pub retries: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { threads: 0, elimination_seed: 0, retries: 100 }
    }
}

/// Random stream used for coordinate changes, separate from the one that
/// drew the configuration.
pub fn elimination_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

struct PointEval {
    split: SplittingType,
    fat: bool,
    monoidal_zero: bool,
}

/// Splitting types of the whole pencil on every line through every point.
pub fn splitting_types<F: FiniteField + Sync>(
    sp: &SteinerPencil<F>,
    points: &[PointP2<F::Elem>],
    threads: usize,
) -> Result<Vec<SplittingType>>
where
    F::Elem: Send + Sync,
{
    in_pool(threads, || points.par_iter().map(|x| splitting_type(sp, x)).collect::<Result<Vec<_>>>())?
}

/// Computes the splitting type at every point of `P²(𝔽p)` and checks it
/// against `Z`, `Γ` and the monoidal curve.
pub fn jumping_scan<F: FiniteField + Sync + Send>(z: &PointConfig<F>, opts: &ScanOptions) -> Result<JumpingReport<F>>
where
    F::Elem: Send + Sync,
{
    let m = z.len();
    if m < 4 {
        return Err(Error::InvalidArgument(format!("scan needs at least 4 points, got {m}")));
    }
    let field = z.field();
    let (n, epsilon) = case_of(m);
    let sp = steiner_pencil(z)?;
    let fat = FatPointTests::new(z)?;
    let monoidal = if epsilon == 0 { Some(monoidal_det(z)?) } else { None };
    let points = plane_points(field);
    let evals: Vec<PointEval> = in_pool(opts.threads, || {
        points
            .par_iter()
            .map(|x| {
                Ok(PointEval {
                    split: splitting_type(&sp, x)?,
                    fat: fat.any(field, x),
                    monoidal_zero: monoidal.as_ref().is_some_and(|d| field.is_zero(&d.eval(field, x))),
                })
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let gamma = if epsilon == 1 { gamma_points(z)? } else { Vec::new() };
    let gamma_set: BTreeSet<_> = gamma.iter().cloned().collect();
    let z_order = n.saturating_sub(2);
    let mut verdicts = BTreeMap::new();
    let mut mismatches = Vec::new();
    let mut records = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut z_length = 0;
    let mut jumping = 0;

    let mut set_ok = true;
    let mut z_ok = true;
    let mut gamma_ok = true;
    let mut fat_ok = true;
    for (x, e) in points.iter().zip(&evals) {
        let order = e.split.order();
        let in_z = z.contains(x);
        let in_gamma = gamma_set.contains(x);
        *histogram.entry(e.split).or_insert(0) += 1;
        if order >= 1 {
            jumping += 1;
        }
        if order >= 1 || in_z || in_gamma {
            records.push(PointRecord { point: x.clone(), split: e.split, order, in_z, in_gamma });
        }
        if in_z {
            z_length += order * (order + 1) / 2;
        }
        if !in_z && (order >= 1) != e.fat {
            fat_ok = false;
            mismatches.push(("fat_point_equivalence".to_string(), x.clone()));
        }
        if epsilon == 1 {
            let expected = if in_z { z_order } else if in_gamma { 1 } else { 0 };
            if order != expected {
                if in_z {
                    z_ok = false;
                } else if in_gamma {
                    gamma_ok = false;
                } else {
                    set_ok = false;
                }
                mismatches.push(("jumping_order".to_string(), x.clone()));
            }
        } else {
            if (order >= 1) != e.monoidal_zero {
                set_ok = false;
                mismatches.push(("monoidal_zero_set".to_string(), x.clone()));
            }
            if in_z && !e.monoidal_zero {
                z_ok = false;
            }
        }
    }
    verdicts.insert("fat_point_equivalence".to_string(), fat_ok);

    let mut counts = Counts {
        scanned: points.len(),
        jumping,
        z_points: m,
        z_length,
        gamma_rational: gamma.len(),
        gamma_closure: None,
        expected_total: None,
        expected_z_part: None,
        expected_gamma_part: None,
    };
    let mut eliminant_json = None;
    if epsilon == 1 {
        verdicts.insert("jumping_set_is_z_union_gamma".to_string(), set_ok);
        verdicts.insert("order_on_z".to_string(), z_ok);
        verdicts.insert("order_on_gamma".to_string(), gamma_ok);
        let disjoint = n <= 3 || z.points().iter().all(|x| fat.dim_at(field, n - 2, x) == 0);
        verdicts.insert("gamma_disjoint_from_z".to_string(), disjoint);
        let (total, z_part, gamma_part) = length_parts(n as u64);
        counts.expected_total = Some(total as usize);
        counts.expected_z_part = Some(z_part as usize);
        counts.expected_gamma_part = Some(gamma_part as usize);
        if n <= 3 {
            counts.gamma_closure = Some(0);
        }
        if n == 4 {
            let mut rng = elimination_rng(opts.elimination_seed);
            match pencil4_eliminant(z, &mut rng, opts.retries) {
                Ok(el) => {
                    let (v, closure) = eliminant_verdicts(field, &el, &gamma);
                    verdicts.extend(v);
                    counts.gamma_closure = closure;
                    eliminant_json = Some(el.summary_json(field));
                }
                Err(e) if e.is_degenerate_input() => {
                    verdicts.insert("eliminant_squarefree".to_string(), false);
                }
                Err(e) => return Err(e),
            }
        }
        let length_ok = z_length == z_part as usize
            && counts.gamma_closure.map_or(true, |g| g == gamma_part as usize && z_length + g == total as usize);
        verdicts.insert("length_accounting".to_string(), length_ok);
    } else {
        verdicts.insert("jumping_set_is_monoidal_zero_set".to_string(), set_ok);
        verdicts.insert("z_on_monoidal_curve".to_string(), z_ok);
        let d = monoidal.as_ref().expect("odd case");
        verdicts.insert("monoidal_degree".to_string(), d.degree() == n * (n - 1) && !d.is_zero(field));
    }

    Ok(JumpingReport {
        config: z.clone(),
        n,
        epsilon,
        records,
        histogram,
        gamma,
        counts,
        verdicts,
        mismatches,
        eliminant: eliminant_json,
        reseeds: 0,
    })
}

/// Degree bookkeeping, factor-degree profile and root lifting of an
/// elimination run, compared with the rational points of `Γ`. Also returns
/// the number of points of `Γ` over the closure when the run certifies it.
pub fn eliminant_verdicts<F: FiniteField>(
    field: &F,
    el: &Eliminant<F>,
    gamma: &[PointP2<F::Elem>],
) -> (BTreeMap<String, bool>, Option<usize>) {
    let mut v = BTreeMap::new();
    let degrees = el.r16.degree() == 16 && el.r4.degree() == 4 && el.r12.degree() == 12;
    let exact = el.r4.mul(field, &el.r12) == el.r16;
    v.insert("eliminant_degrees".to_string(), degrees && exact);
    let affine = el.r12_affine(field);
    let squarefree = el.is_squarefree(field);
    v.insert("eliminant_squarefree".to_string(), squarefree);
    let profile = distinct_degree_profile(field, &affine).unwrap_or_default();
    let sum: usize = profile.iter().map(|b| b.1).sum();
    v.insert("eliminant_profile_sum".to_string(), sum == 12);
    let linear = profile.iter().find(|b| b.0 == 1).map_or(0, |b| b.1);
    let lifted = el.rational_points(field);
    let lifts_ok = linear == gamma.len() && lifted.as_deref() == Some(gamma);
    v.insert("eliminant_rational_roots_lift".to_string(), lifts_ok);
    let closure = (degrees && exact && squarefree && sum == 12).then_some(12);
    (v, closure)
}

/// Splitting type, order and membership flags at one point.
pub fn point_record<F: Field>(
    sp: &SteinerPencil<F>,
    gamma: &[PointP2<F::Elem>],
    x: &PointP2<F::Elem>,
) -> Result<PointRecord<F::Elem>> {
    let split = splitting_type(sp, x)?;
    Ok(PointRecord {
        point: x.clone(),
        split,
        order: split.order(),
        in_z: sp.config().contains(x),
        in_gamma: gamma.contains(x),
    })
}
