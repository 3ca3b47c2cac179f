//! Checks on the structure of the jumping locus: monoidal curves of enlarged
//! configurations, their common zeros, and the shape of the fat-point systems
//! at extra jumping points.

use std::collections::BTreeSet;

use rand::Rng;

use crate::algebra::{Field, FiniteField};
use crate::error::{Error, Result};
use crate::forms::{curves_through, fat_point_members, form_exact_div, form_gcd, monoidal_det, vanishes_to_order, HForm};
use crate::geom::{plane_points, sample_point, PointConfig, PointP2};
use crate::intersect::length_parts;

use super::scan::gamma_points;

/// `(total, part on Z, part on Γ)` for `2n` points; the first is the sum of
/// the other two.
pub fn length_accounting(n: usize) -> Result<(usize, usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let (t, z, g) = length_parts(n as u64);
    assert_eq!(t, z + g, "length identity fails at n = {n}");
    Ok((t as usize, z as usize, g as usize))
}

/// Adds `x` to `z` and returns the monoidal determinant of the result.
pub fn augmented_monoidal<F: Field>(z: &PointConfig<F>, x: &PointP2<F::Elem>) -> Result<HForm<F::Elem>> {
    if z.len() % 2 == 1 {
        return Err(Error::InvalidArgument(format!("expected an even configuration, got {}", z.len())));
    }
    let aug = z.with_point(x.clone())?;
    let n = z.len() / 2;
    if !aug.imposes_independent_conditions(&[n]) {
        return Err(Error::Degenerate("augmented configuration fails to impose independent conditions".into()));
    }
    let d = monoidal_det(&aug)?;
    if d.is_zero(z.field()) {
        return Err(Error::Degenerate("monoidal determinant vanishes identically".into()));
    }
    Ok(d)
}

/// Whether the monoidal curve of `z ∪ {x}` passes through every point of `z`
/// and of `gamma`.
pub fn containment_monoidal_on<F: Field>(
    z: &PointConfig<F>,
    x_extra: &PointP2<F::Elem>,
    gamma: &[PointP2<F::Elem>],
) -> Result<bool> {
    let field = z.field();
    let d = augmented_monoidal(z, x_extra)?;
    Ok(z.points().iter().chain(gamma).all(|p| field.is_zero(&d.eval(field, p))))
}

/// [`containment_monoidal_on`] with `Γ` found by scanning.
pub fn containment_monoidal<F: FiniteField + Sync>(z: &PointConfig<F>, x_extra: &PointP2<F::Elem>) -> Result<bool>
where
    F::Elem: Send + Sync,
{
    containment_monoidal_on(z, x_extra, &gamma_points(z)?)
}

/// A random point that can be added to `z`, with the monoidal determinant of
/// the enlarged configuration.
pub fn random_extra_point<F: Field, R: Rng>(
    z: &PointConfig<F>,
    rng: &mut R,
    retries: usize,
) -> Result<(PointP2<F::Elem>, HForm<F::Elem>)> {
    for _ in 0..retries {
        let x = sample_point(z.field(), rng);
        if z.contains(&x) {
            continue;
        }
        match augmented_monoidal(z, &x) {
            Ok(d) => return Ok((x, d)),
            Err(e) if e.is_degenerate_input() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { what: "extra point for the monoidal curve".into(), attempts: retries })
}

#[derive(Debug, Clone)]
pub struct BaseLocus<E> {
    pub extra_points: Vec<PointP2<E>>,
    /// Common zeros of the monoidal curves over the prime field.
    pub intersection: Vec<PointP2<E>>,
    /// `Z ∪ Γ`, sorted.
    pub expected: Vec<PointP2<E>>,
}

impl<E: PartialEq> BaseLocus<E> {
    pub fn equal(&self) -> bool {
        self.intersection == self.expected
    }
}

/// Intersects the zero sets of the monoidal curves of `z ∪ {xᵢ}` for
/// `trials` random `xᵢ`, over all of `P²(𝔽p)`.
pub fn base_locus_equality<F: FiniteField + Sync, R: Rng>(
    z: &PointConfig<F>,
    trials: usize,
    rng: &mut R,
    retries: usize,
) -> Result<BaseLocus<F::Elem>>
where
    F::Elem: Send + Sync,
{
    let field = z.field();
    let mut extra = Vec::with_capacity(trials);
    let mut curves = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (x, d) = random_extra_point(z, rng, retries)?;
        extra.push(x);
        curves.push(d);
    }
    let intersection: Vec<_> = plane_points(field)
        .into_iter()
        .filter(|p| curves.iter().all(|d| field.is_zero(&d.eval(field, p))))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let expected: Vec<_> =
        z.points().iter().cloned().chain(gamma_points(z)?).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(BaseLocus { extra_points: extra, intersection, expected })
}

/// Factorization of the degree-`n` curves through `Z` with a point of
/// multiplicity `n − 1` at `x ∈ Γ`.
#[derive(Debug, Clone)]
pub struct PinceauFactor<E> {
    pub dim: usize,
    /// Common factor of the two members used.
    pub common: HForm<E>,
    pub quotients: Vec<HForm<E>>,
    pub common_degree_ok: bool,
    pub common_through_z: bool,
    pub common_singular_at_x: bool,
    pub quotients_linear_through_x: bool,
}

impl<E> PinceauFactor<E> {
    pub fn holds(&self) -> bool {
        self.dim >= 2
            && self.common_degree_ok
            && self.common_through_z
            && self.common_singular_at_x
            && self.quotients_linear_through_x
    }
}

pub fn pinceau_factorization<F: Field>(z: &PointConfig<F>, x: &PointP2<F::Elem>) -> Result<PinceauFactor<F::Elem>> {
    let m = z.len();
    if m % 2 == 1 || m < 8 {
        return Err(Error::InvalidArgument(format!("needs 2n points with n >= 4, got {m}")));
    }
    let n = m / 2;
    let field = z.field();
    let w = curves_through(z, n)?;
    let members = fat_point_members(&w, x, n - 1)?;
    let dim = members.len();
    if dim < 2 {
        return Ok(PinceauFactor {
            dim,
            common: HForm::zero(field, 0),
            quotients: Vec::new(),
            common_degree_ok: false,
            common_through_z: false,
            common_singular_at_x: false,
            quotients_linear_through_x: false,
        });
    }
    let common = form_gcd(field, &members[0], &members[1])?;
    let quotients: Vec<_> = members[..2]
        .iter()
        .map(|g| form_exact_div(field, g, &common))
        .collect::<Result<Option<Vec<_>>>>()?
        .unwrap_or_default();
    let common_through_z = z.points().iter().all(|p| field.is_zero(&common.eval(field, p)));
    let common_singular_at_x = common.degree() >= n - 2 && vanishes_to_order(field, &common, x, n - 2)?;
    let quotients_linear_through_x = quotients.len() == 2
        && quotients.iter().all(|q| q.degree() == 1 && field.is_zero(&q.eval(field, x)));
    Ok(PinceauFactor {
        dim,
        common_degree_ok: common.degree() == n - 1,
        common,
        quotients,
        common_through_z,
        common_singular_at_x,
        quotients_linear_through_x,
    })
}
