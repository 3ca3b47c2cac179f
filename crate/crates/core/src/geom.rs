//! Points of the projective plane, configurations in linear general position,
//! and a seeded configuration generator.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{kernel_basis, rank, Field, FieldSpec, FiniteField, Mat};
use crate::error::{Error, Result};
use crate::forms::hform::{monomial_count, monomial_values};

/// A point of `P²`, stored with its last nonzero coordinate equal to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointP2<E> {
    coords: [E; 3],
}

impl<E: Clone> PointP2<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, coords: [E; 3]) -> Result<Self> {
        let last = (0..3)
            .rev()
            .find(|&i| !field.is_zero(&coords[i]))
            .ok_or_else(|| Error::InvalidArgument("(0:0:0) is not a projective point".into()))?;
        let inv = field.inv(&coords[last]).unwrap();
        Ok(PointP2 { coords: coords.map(|c| field.mul(&c, &inv)) })
    }

    pub fn from_i64s<F: Field<Elem = E>>(field: &F, c: [i64; 3]) -> Result<Self> {
        Self::new(field, c.map(|x| field.from_i64(x)))
    }

    pub fn coords(&self) -> &[E; 3] {
        &self.coords
    }

    pub fn normalize<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self::new(field, self.coords.clone()).expect("already a valid point")
    }

    /// Image under the linear map `T` (acting on column vectors).
    pub fn transform<F: Field<Elem = E>>(&self, field: &F, t: &[[E; 3]; 3]) -> Self {
        let c = std::array::from_fn(|i| {
            let mut acc = field.zero();
            for j in 0..3 {
                field.mul_add_assign(&mut acc, &t[i][j], &self.coords[j]);
            }
            acc
        });
        Self::new(field, c).expect("invertible transform")
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> Value {
        Value::Array(self.coords.iter().map(|c| field.elem_to_json(c)).collect())
    }

    pub fn from_json<F: Field<Elem = E>>(field: &F, v: &Value) -> Result<Self> {
        let a = v
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse(format!("point must be a 3-element array, got {v}")))?;
        Self::new(
            field,
            [field.elem_from_json(&a[0])?, field.elem_from_json(&a[1])?, field.elem_from_json(&a[2])?],
        )
    }
}

pub fn collinear<F: Field>(field: &F, a: &PointP2<F::Elem>, b: &PointP2<F::Elem>, c: &PointP2<F::Elem>) -> bool {
    let m = Mat::from_rows(vec![a.coords.to_vec(), b.coords.to_vec(), c.coords.to_vec()]).unwrap();
    field.is_zero(&crate::algebra::det(field, &m).unwrap())
}

/// Two independent linear forms vanishing at `x`: the canonical kernel basis
/// of the `1×3` evaluation row. They span the pencil of lines through `x`.
pub fn dual_line_basis<F: Field>(field: &F, x: &PointP2<F::Elem>) -> [[F::Elem; 3]; 2] {
    let row = Mat::from_rows(vec![x.coords.to_vec()]).unwrap();
    let ker = kernel_basis(field, &row);
    debug_assert_eq!(ker.len(), 2);
    let to3 = |v: &Vec<F::Elem>| [v[0].clone(), v[1].clone(), v[2].clone()];
    [to3(&ker[0]), to3(&ker[1])]
}

/// All points of `P²(𝔽q)` in a fixed order: `(a:b:1)`, then `(a:1:0)`, then `(1:0:0)`.
pub fn plane_points<F: FiniteField>(field: &F) -> Vec<PointP2<F::Elem>> {
    let els = field.elements();
    let mut out = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
    for a in &els {
        for b in &els {
            out.push(PointP2 { coords: [a.clone(), b.clone(), field.one()] });
        }
    }
    for a in &els {
        out.push(PointP2 { coords: [a.clone(), field.one(), field.zero()] });
    }
    out.push(PointP2 { coords: [field.one(), field.zero(), field.zero()] });
    out
}

/// `h⁰(J_Z(d))`: dimension of degree-`d` forms vanishing on `points`.
pub fn forms_through_dim<F: Field>(field: &F, points: &[PointP2<F::Elem>], d: usize) -> usize {
    if points.is_empty() {
        return monomial_count(d);
    }
    let rows = points.iter().map(|x| monomial_values(field, d, &x.coords)).collect();
    monomial_count(d) - rank(field, &Mat::from_rows(rows).unwrap())
}

/// An ordered point set in linear general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig<F: Field> {
    field: F,
    points: Vec<PointP2<F::Elem>>,
}

impl<F: Field> PointConfig<F> {
    /// Validates distinctness and the absence of collinear triples.
    pub fn new(field: F, points: Vec<PointP2<F::Elem>>) -> Result<Self> {
        let points: Vec<_> = points.into_iter().map(|p| p.normalize(&field)).collect();
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::Degenerate(format!("repeated point {:?}", p.coords)));
            }
        }
        if let Some((i, j, k)) = find_collinear_triple(&field, &points) {
            return Err(Error::Degenerate(format!("points {i}, {j}, {k} are collinear")));
        }
        Ok(PointConfig { field, points })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[PointP2<F::Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &PointP2<F::Elem>) -> bool {
        self.points.contains(x)
    }

    /// Checks `h⁰(J_Z(d)) = max(0, binom(d+2,2) − |Z|)` for each `d`.
    pub fn imposes_independent_conditions(&self, degrees: &[usize]) -> bool {
        degrees.iter().all(|&d| {
            forms_through_dim(&self.field, &self.points, d)
                == monomial_count(d).saturating_sub(self.points.len())
        })
    }

    /// `Z ∪ {x}`, validated for general position.
    pub fn with_point(&self, x: PointP2<F::Elem>) -> Result<Self> {
        let mut pts = self.points.clone();
        pts.push(x);
        Self::new(self.field.clone(), pts)
    }

    /// Image of every point under `T`.
    pub fn transform(&self, t: &[[F::Elem; 3]; 3]) -> Result<Self> {
        Self::new(self.field.clone(), self.points.iter().map(|p| p.transform(&self.field, t)).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.spec().to_string(),
            "points": self.points.iter().map(|p| p.to_json(&self.field)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: F, v: &Value) -> Result<Self> {
        let spec = field_spec_of_json(v)?;
        if spec != field.spec() {
            return Err(Error::InvalidArgument(format!(
                "config is over {spec}, expected {}",
                field.spec()
            )));
        }
        let pts = v["points"]
            .as_array()
            .ok_or_else(|| Error::Parse("config needs a `points` array".into()))?
            .iter()
            .map(|p| PointP2::from_json(&field, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, pts)
    }
}

/// Reads the `"field"` entry of a configuration document.
pub fn field_spec_of_json(v: &Value) -> Result<FieldSpec> {
    v["field"]
        .as_str()
        .ok_or_else(|| Error::Parse("config needs a string `field`".into()))?
        .parse()
}

fn find_collinear_triple<F: Field>(field: &F, pts: &[PointP2<F::Elem>]) -> Option<(usize, usize, usize)> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if collinear(field, &pts[i], &pts[j], &pts[k]) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Default number of rejection-sampling attempts.
pub const DEFAULT_RETRIES: usize = 1000;

/// Degrees the generator validates for a configuration of `count` points:
/// everything up to `count/2 + 1`, which covers the Steiner, monoidal and
/// fat-point systems used downstream.
pub fn default_validation_degrees(count: usize) -> Vec<usize> {
    (1..=count / 2 + 1).collect()
}

pub(crate) fn sample_scalar<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    match field.characteristic() {
        0 => field.from_i64(rng.gen_range(-12..=12)),
        p => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub(crate) fn sample_point<F: Field, R: Rng>(field: &F, rng: &mut R) -> PointP2<F::Elem> {
    loop {
        let c = [sample_scalar(field, rng), sample_scalar(field, rng), sample_scalar(field, rng)];
        if let Ok(p) = PointP2::new(field, c) {
            return p;
        }
    }
}

fn check_field_size<F: Field>(field: &F, count: usize) -> Result<()> {
    if let FieldSpec::PrimeField(p) = field.spec() {
        if p * p + p + 1 <= 10 * count as u64 {
            return Err(Error::FieldTooSmall(format!(
                "P²(𝔽{p}) has {} points, need more than {}",
                p * p + p + 1,
                10 * count
            )));
        }
    }
    Ok(())
}

/// Draws a configuration from an existing random stream.
pub fn random_config_from_rng<F: Field, R: Rng>(
    field: &F,
    count: usize,
    degrees: &[usize],
    retries: usize,
    rng: &mut R,
) -> Result<PointConfig<F>> {
    check_field_size(field, count)?;
    for _ in 0..retries {
        let mut pts: Vec<PointP2<F::Elem>> = Vec::with_capacity(count);
        let mut budget = 50 * count + 50;
        while pts.len() < count && budget > 0 {
            budget -= 1;
            let x = sample_point(field, rng);
            if pts.contains(&x) {
                continue;
            }
            let ok = (0..pts.len())
                .all(|i| (i + 1..pts.len()).all(|j| !collinear(field, &pts[i], &pts[j], &x)));
            if ok {
                pts.push(x);
            }
        }
        if pts.len() < count {
            continue;
        }
        let cfg = PointConfig { field: field.clone(), points: pts };
        if cfg.imposes_independent_conditions(degrees) {
            return Ok(cfg);
        }
    }
    Err(Error::RetriesExhausted { what: format!("generating {count} points over {}", field.spec()), attempts: retries })
}

/// Deterministic random configuration in linear general position that also
/// imposes independent conditions in each of `degrees`.
pub fn random_config<F: Field>(field: &F, count: usize, seed: u64, degrees: &[usize]) -> Result<PointConfig<F>> {
    random_config_with_retries(field, count, seed, degrees, DEFAULT_RETRIES)
}

pub fn random_config_with_retries<F: Field>(
    field: &F,
    count: usize,
    seed: u64,
    degrees: &[usize],
    retries: usize,
) -> Result<PointConfig<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_config_from_rng(field, count, degrees, retries, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn collinearity() {
        let q = Rationals;
        let p = |c| PointP2::from_i64s(&q, c).unwrap();
        assert!(collinear(&q, &p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])));
        assert!(!collinear(&q, &p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])));
        assert!(collinear(&q, &p([1, 1, 1]), &p([1, 2, 3]), &p([1, 3, 5])));
    }

    #[test]
    fn normalization_is_canonical() {
        let f = PrimeField::new(101).unwrap();
        let a = PointP2::from_i64s(&f, [2, 4, 6]).unwrap();
        let b = PointP2::from_i64s(&f, [1, 2, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.normalize(&f), a);
        assert_eq!(a.coords()[2], 1);
        assert!(PointP2::from_i64s(&f, [0, 0, 0]).is_err());
        let c = PointP2::from_i64s(&f, [3, 5, 0]).unwrap();
        assert_eq!(c.coords()[1], 1);
    }

    #[test]
    fn dual_basis_vanishes_and_is_independent() {
        let q = Rationals;
        let x = PointP2::from_i64s(&q, [0, 0, 1]).unwrap();
        let [l0, l1] = dual_line_basis(&q, &x);
        assert_eq!(l0, [q.one(), q.zero(), q.zero()]);
        assert_eq!(l1, [q.zero(), q.one(), q.zero()]);
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = sample_point(&f, &mut rng);
            let ls = dual_line_basis(&f, &x);
            for l in &ls {
                let v = (0..3).fold(0, |a, i| (a + l[i] * x.coords()[i]) % 101);
                assert_eq!(v, 0);
            }
            let m = Mat::from_rows(ls.iter().map(|l| l.to_vec()).collect()).unwrap();
            assert_eq!(rank(&f, &m), 2);
        }
    }

    #[test]
    fn plane_point_count() {
        let f = PrimeField::new(7).unwrap();
        let pts = plane_points(&f);
        assert_eq!(pts.len(), 57);
        let set: HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 57);
    }

    #[test]
    fn generator_properties() {
        let q = Rationals;
        let cfg = random_config(&q, 4, 5, &[1]).unwrap();
        assert_eq!(cfg.len(), 4);
        let f = PrimeField::new(101).unwrap();
        let a = random_config(&f, 8, 1, &default_validation_degrees(8)).unwrap();
        let b = random_config(&f, 8, 1, &default_validation_degrees(8)).unwrap();
        assert_eq!(a, b);
        assert_eq!(forms_through_dim(&f, a.points(), 3), 2);
        let small = PrimeField::new(5).unwrap();
        assert!(matches!(random_config(&small, 8, 1, &[]), Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn config_json_round_trip() {
        let q = Rationals;
        let pts = vec![
            PointP2::from_i64s(&q, [1, 0, 0]).unwrap(),
            PointP2::from_i64s(&q, [0, 1, 0]).unwrap(),
            PointP2::from_i64s(&q, [1, 1, 3]).unwrap(),
        ];
        let cfg = PointConfig::new(q, pts).unwrap();
        let v = cfg.to_json();
        assert_eq!(v["field"], "q");
        assert_eq!(v["points"][2], json!(["1/3", "1/3", 1]));
        assert_eq!(PointConfig::from_json(q, &v).unwrap(), cfg);
        let f = PrimeField::new(101).unwrap();
        assert!(PointConfig::from_json(f, &v).is_err());
    }

    #[test]
    fn rejects_degenerate_configs() {
        let q = Rationals;
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0]].map(|c| PointP2::from_i64s(&q, c).unwrap());
        assert!(matches!(PointConfig::new(q, pts.to_vec()), Err(Error::Degenerate(_))));
        let dup = [[1, 2, 3], [2, 4, 6]].map(|c| PointP2::from_i64s(&q, c).unwrap());
        assert!(PointConfig::new(q, dup.to_vec()).is_err());
    }
}
