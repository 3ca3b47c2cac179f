//! Elimination for eight points: the binary forms whose roots are the
//! projections of the singular points of the cubic pencil, and the ninth base
//! point of that pencil.
//!
//! Everything is computed after a random change of coordinates `x' = T x`
//! so that every resultant has constant leading coefficients; points found
//! in the new coordinates are mapped back with `T⁻¹`.

use rand::Rng;

use crate::algebra::{is_squarefree, roots_in_field, upoly_gcd, Field, FiniteField, UPoly};
use crate::error::{Error, Result};
use crate::forms::{curves_through, form_exact_div, sylvester_resultant, HForm};
use crate::geom::{sample_scalar, PointConfig, PointP2};

pub type Transform<E> = [[E; 3]; 3];

/// A random invertible transform and its inverse.
pub fn random_transform<F: Field, R: Rng>(field: &F, rng: &mut R) -> (Transform<F::Elem>, Transform<F::Elem>) {
    loop {
        let t: Transform<F::Elem> =
            std::array::from_fn(|_| std::array::from_fn(|_| sample_scalar(field, rng)));
        if let Some(inv) = inverse3(field, &t) {
            return (t, inv);
        }
    }
}

pub fn inverse3<F: Field>(field: &F, t: &Transform<F::Elem>) -> Option<Transform<F::Elem>> {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        field.sub(&field.mul(&t[r0][c0], &t[r1][c1]), &field.mul(&t[r0][c1], &t[r1][c0]))
    };
    let mut det = field.zero();
    for j in 0..3 {
        field.mul_add_assign(&mut det, &t[0][j], &cof(0, j));
    }
    let inv = field.inv(&det)?;
    // inverse = adjugate / det, adjugate = transpose of cofactors
    Some(std::array::from_fn(|i| std::array::from_fn(|j| field.mul(&cof(j, i), &inv))))
}

/// Output of the eight-point elimination, in the changed coordinates.
#[derive(Debug, Clone)]
pub struct Eliminant<F: Field> {
    pub transform: Transform<F::Elem>,
    pub inverse: Transform<F::Elem>,
    /// Coordinate changes tried, including the successful one.
    pub attempts: usize,
    /// Pencil basis through the transformed points.
    pub pencil: [HForm<F::Elem>; 2],
    /// `2×2` minors `M01, M02, M12` of `[∇f0 | ∇f1]`.
    pub minors: [HForm<F::Elem>; 3],
    /// `Res_{x2}(M02, M12)`
    pub r16: HForm<F::Elem>,
    /// `Res_{x2}(∂₂f0, ∂₂f1)`
    pub r4: HForm<F::Elem>,
    /// `r16 / r4`
    pub r12: HForm<F::Elem>,
}

impl<F: Field> Eliminant<F> {
    /// `r12(1, t)`; it keeps degree 12 because that is required of an accepted
    /// coordinate change.
    pub fn r12_affine(&self, field: &F) -> UPoly<F::Elem> {
        self.r12.dehomogenize_binary(field).expect("binary form")
    }

    pub fn is_squarefree(&self, field: &F) -> bool {
        is_squarefree(field, &self.r12_affine(field))
    }

    /// Lifts a root `t` of `r12(1, t)` to the unique point above it where all
    /// three minors vanish, in original coordinates.
    pub fn lift(&self, field: &F, t: &F::Elem) -> Option<PointP2<F::Elem>> {
        let one = field.one();
        let mut g = UPoly::zero();
        for m in &self.minors {
            g = upoly_gcd(field, &g, &m.restrict_to_fibre(field, 2, [&one, t]));
        }
        if g.degree() != Some(1) {
            return None;
        }
        let x2 = field.neg(&g.coeffs()[0]);
        let p = PointP2::new(field, [one.clone(), t.clone(), x2]).ok()?;
        Some(p.transform(field, &self.inverse))
    }

    pub fn summary_json(&self, field: &F) -> serde_json::Value {
        serde_json::json!({
            "transform": self.transform.iter().map(|r| r.iter().map(|c| field.elem_to_json(c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "attempts": self.attempts,
            "deg_r16": self.r16.degree(),
            "deg_r4": self.r4.degree(),
            "deg_r12": self.r12.degree(),
            "r12": self.r12.to_json(field),
        })
    }
}

impl<F: FiniteField> Eliminant<F> {
    /// Rational roots of `r12(1, t)`, lifted and mapped back.
    pub fn rational_points(&self, field: &F) -> Option<Vec<PointP2<F::Elem>>> {
        let mut pts: Vec<_> = roots_in_field(field, &self.r12_affine(field))
            .iter()
            .map(|t| self.lift(field, t))
            .collect::<Option<_>>()?;
        pts.sort();
        Some(pts)
    }
}

/// Reasons a coordinate change is rejected.
enum Reject {
    Retry,
    NotSquarefree,
}

/// `(f0 + f1, f1)`: the canonical kernel basis puts a zero on the last
/// monomial `x2³` of `f0`, which every resultant in `x2` needs to be nonzero.
fn pencil_basis<F: Field>(field: &F, basis: &[HForm<F::Elem>]) -> Result<[HForm<F::Elem>; 2]> {
    Ok([basis[0].add(field, &basis[1])?, basis[1].clone()])
}

fn gradient_minors<F: Field>(field: &F, f0: &HForm<F::Elem>, f1: &HForm<F::Elem>) -> Result<[HForm<F::Elem>; 3]> {
    let g0 = [f0.partial(field, 0)?, f0.partial(field, 1)?, f0.partial(field, 2)?];
    let g1 = [f1.partial(field, 0)?, f1.partial(field, 1)?, f1.partial(field, 2)?];
    let minor = |i: usize, j: usize| g0[i].mul(field, &g1[j]).sub(field, &g0[j].mul(field, &g1[i]));
    Ok([minor(0, 1)?, minor(0, 2)?, minor(1, 2)?])
}

fn try_eliminant<F: Field>(
    z: &PointConfig<F>,
    t: Transform<F::Elem>,
    inv: Transform<F::Elem>,
    attempts: usize,
) -> Result<std::result::Result<Eliminant<F>, Reject>> {
    let field = z.field();
    let zt = z.transform(&t)?;
    let w = curves_through(&zt, 3)?;
    if w.dim() != 2 {
        return Err(Error::Degenerate(format!("eight points lie on {} independent cubics", w.dim())));
    }
    let [f0, f1] = pencil_basis(field, w.basis())?;
    let minors = gradient_minors(field, &f0, &f1)?;
    let r16 = match sylvester_resultant(field, &minors[1], &minors[2], 2) {
        Err(Error::NeedsCoordinateChange) => return Ok(Err(Reject::Retry)),
        r => r?,
    };
    let r4 = match sylvester_resultant(field, &f0.partial(field, 2)?, &f1.partial(field, 2)?, 2) {
        Err(Error::NeedsCoordinateChange) => return Ok(Err(Reject::Retry)),
        r => r?,
    };
    if r4.is_zero(field) {
        return Ok(Err(Reject::Retry));
    }
    let Some(r12) = form_exact_div(field, &r16, &r4)? else {
        return Ok(Err(Reject::Retry));
    };
    let el = Eliminant { transform: t, inverse: inv, attempts, pencil: [f0, f1], minors, r16, r4, r12 };
    if el.r12_affine(field).degree() != Some(12) {
        return Ok(Err(Reject::Retry));
    }
    if !el.is_squarefree(field) {
        return Ok(Err(Reject::NotSquarefree));
    }
    Ok(Ok(el))
}

/// Runs the elimination under fresh random coordinate changes until one gives
/// constant leading coefficients, an exact division and a squarefree `r12`
/// of full degree.
///
/// Fails with [`Error::NotSquarefree`] if `r12` was never squarefree, which
/// for a general configuration does not happen.
pub fn pencil4_eliminant<F: Field, R: Rng>(z: &PointConfig<F>, rng: &mut R, retries: usize) -> Result<Eliminant<F>> {
    if z.len() != 8 {
        return Err(Error::InvalidArgument(format!("elimination is set up for 8 points, got {}", z.len())));
    }
    let p = z.field().characteristic();
    if p != 0 && p <= 16 {
        return Err(Error::FieldTooSmall(format!("elimination needs characteristic > 16, got {p}")));
    }
    let mut other_failure = false;
    for attempt in 1..=retries {
        let (t, inv) = random_transform(z.field(), rng);
        match try_eliminant(z, t, inv, attempt)? {
            Ok(el) => return Ok(el),
            Err(Reject::Retry) => other_failure = true,
            Err(Reject::NotSquarefree) => {}
        }
    }
    if other_failure {
        Err(Error::RetriesExhausted { what: "coordinate change for elimination".into(), attempts: retries })
    } else {
        Err(Error::NotSquarefree)
    }
}

#[derive(Debug, Clone)]
pub struct NinthPoint<F: Field> {
    pub point: PointP2<F::Elem>,
    pub transform: Transform<F::Elem>,
    pub attempts: usize,
}

/// The ninth base point of the pencil of cubics through eight points: the
/// residual root of `Res_{x2}(f0, f1)` once the eight known roots are divided
/// out, lifted back through the gcd of `f0` and `f1` on its fibre.
pub fn ninth_point<F: Field, R: Rng>(z: &PointConfig<F>, rng: &mut R, retries: usize) -> Result<NinthPoint<F>> {
    if z.len() != 8 {
        return Err(Error::InvalidArgument(format!("ninth point needs 8 points, got {}", z.len())));
    }
    let field = z.field();
    let p = field.characteristic();
    if p != 0 && p <= 9 {
        return Err(Error::FieldTooSmall(format!("elimination needs characteristic > 9, got {p}")));
    }
    let base = curves_through(z, 3)?;
    if base.dim() != 2 {
        return Err(Error::Degenerate(format!("eight points lie on {} independent cubics", base.dim())));
    }
    for attempt in 1..=retries {
        let (t, inv) = random_transform(field, rng);
        let zt = z.transform(&t)?;
        let w = curves_through(&zt, 3)?;
        let [f0, f1] = pencil_basis(field, w.basis())?;
        let (f0, f1) = (&f0, &f1);
        let r9 = match sylvester_resultant(field, f0, f1, 2) {
            Err(Error::NeedsCoordinateChange) => continue,
            r => r?,
        };
        let affine = r9.dehomogenize_binary(field)?;
        if affine.degree() != Some(9) || !is_squarefree(field, &affine) {
            continue;
        }
        let mut known = HForm::monomial(field, [0, 0, 0], field.one());
        for q in zt.points() {
            let [a, b, _] = q.coords();
            known = known.mul(field, &HForm::linear([b.clone(), field.neg(a), field.zero()]));
        }
        let Some(rest) = form_exact_div(field, &r9, &known)? else { continue };
        // rest = c0·x0 + c1·x1 vanishes at (c1 : −c0)
        let (c0, c1) = (rest.coeff(&[1, 0, 0]).clone(), rest.coeff(&[0, 1, 0]).clone());
        let (x0, x1) = (c1, field.neg(&c0));
        let g = upoly_gcd(
            field,
            &f0.restrict_to_fibre(field, 2, [&x0, &x1]),
            &f1.restrict_to_fibre(field, 2, [&x0, &x1]),
        );
        if g.degree() != Some(1) {
            continue;
        }
        let x2 = field.neg(&g.coeffs()[0]);
        let Ok(pt) = PointP2::new(field, [x0, x1, x2]) else { continue };
        let point = pt.transform(field, &inv);
        let vanishes = base.basis().iter().all(|f| field.is_zero(&f.eval(field, &point)));
        if !vanishes || z.contains(&point) {
            return Err(Error::Degenerate("ninth base point coincides with the configuration".into()));
        }
        return Ok(NinthPoint { point, transform: t, attempts: attempt });
    }
    Err(Error::RetriesExhausted { what: "coordinate change for the ninth point".into(), attempts: retries })
}
