//! Linear systems of plane curves through a configuration, their jets at a
//! point, and fat-point dimensions.

use crate::algebra::{kernel_basis, rank, Field, Mat};
use crate::error::{Error, Result};
use crate::geom::{PointConfig, PointP2};

use super::hform::{monomial_count, monomial_values, monomials, HForm};

/// Degree-`d` forms vanishing on a configuration, with the canonical basis
/// given by the kernel of the evaluation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem<F: Field> {
    degree: usize,
    basis: Vec<HForm<F::Elem>>,
    config: PointConfig<F>,
}

impl<F: Field> LinearSystem<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[HForm<F::Elem>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn config(&self) -> &PointConfig<F> {
        &self.config
    }

    pub fn field(&self) -> &F {
        self.config.field()
    }

    /// `Σ cⱼ·fⱼ`
    pub fn member(&self, coeffs: &[F::Elem]) -> HForm<F::Elem> {
        let field = self.field();
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = HForm::zero(field, self.degree);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            out = out.add(field, &f.scale(field, c)).expect("same degree");
        }
        out
    }

    /// Re-expresses the system in another basis; `change` holds the new
    /// members' coordinates in the current basis (one row per member).
    pub fn rebased(&self, change: &[Vec<F::Elem>]) -> Result<Self> {
        let m = Mat::from_rows(change.to_vec())?;
        if m.rows() != self.dim() || m.cols() != self.dim() || rank(self.field(), &m) != self.dim() {
            return Err(Error::InvalidArgument("basis change must be invertible".into()));
        }
        Ok(LinearSystem {
            degree: self.degree,
            basis: change.iter().map(|row| self.member(row)).collect(),
            config: self.config.clone(),
        })
    }
}

pub fn curves_through<F: Field>(z: &PointConfig<F>, d: usize) -> Result<LinearSystem<F>> {
    if d == 0 {
        return Err(Error::InvalidArgument("curves_through needs degree >= 1".into()));
    }
    let field = z.field();
    let basis = if z.is_empty() {
        monomials(d).into_iter().map(|e| HForm::monomial(field, e, field.one())).collect()
    } else {
        let rows = z.points().iter().map(|x| monomial_values(field, d, x.coords())).collect();
        kernel_basis(field, &Mat::from_rows(rows)?)
            .into_iter()
            .map(|v| HForm::new(d, v).expect("kernel vector has the right length"))
            .collect()
    };
    Ok(LinearSystem { degree: d, basis, config: z.clone() })
}

fn check_jet_args<F: Field>(field: &F, d: usize, k: usize) -> Result<()> {
    if k > d {
        return Err(Error::InvalidArgument(format!("jet order {k} exceeds degree {d}")));
    }
    let p = field.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::FieldTooSmall(format!(
            "characteristic {p} must exceed degree {d} for jet reduction"
        )));
    }
    Ok(())
}

/// Order-`k` partials of the system's basis evaluated at `x`: rows are the
/// multi-indices `α` with `|α| = k` in monomial order, columns the basis.
///
/// By the Euler identity, a member lies in the kernel exactly when it vanishes
/// to order `k + 1` at `x`.
pub fn jet_matrix<F: Field>(w: &LinearSystem<F>, x: &PointP2<F::Elem>, k: usize) -> Result<Mat<F::Elem>> {
    let field = w.field();
    check_jet_args(field, w.degree, k)?;
    let alphas = monomials(k);
    let vals = monomial_values(field, w.degree - k, x.coords());
    let mut m = crate::algebra::zeros(field, alphas.len(), w.dim());
    for (j, f) in w.basis.iter().enumerate() {
        for (i, a) in alphas.iter().enumerate() {
            let g = f.partial_multi(field, a)?;
            let mut acc = field.zero();
            for (c, v) in g.coeffs().iter().zip(&vals) {
                field.mul_add_assign(&mut acc, c, v);
            }
            m[(i, j)] = acc;
        }
    }
    Ok(m)
}

/// Result of a fat-point dimension query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FatPointDim {
    /// `h⁰(J_Z ⊗ m_x^k(d))`
    pub dim: usize,
    /// `x` is itself a point of `Z`, where the monoidal loci are not defined.
    pub on_config: bool,
}

/// `h⁰(J_Z ⊗ m_x^k(d))`: degree-`d` curves through `Z` with multiplicity at
/// least `k` at `x`.
pub fn fat_point_dim<F: Field>(z: &PointConfig<F>, x: &PointP2<F::Elem>, k: usize, d: usize) -> Result<FatPointDim> {
    let w = curves_through(z, d)?;
    fat_point_dim_in(&w, x, k)
}

/// As [`fat_point_dim`] for an already computed system.
pub fn fat_point_dim_in<F: Field>(w: &LinearSystem<F>, x: &PointP2<F::Elem>, k: usize) -> Result<FatPointDim> {
    if k == 0 || k > w.degree {
        return Err(Error::InvalidArgument(format!(
            "fat point order {k} must lie in 1..={}",
            w.degree
        )));
    }
    let on_config = w.config.contains(x);
    if w.dim() == 0 {
        return Ok(FatPointDim { dim: 0, on_config });
    }
    let m = jet_matrix(w, x, k - 1)?;
    Ok(FatPointDim { dim: w.dim() - rank(w.field(), &m), on_config })
}

/// Members of the system vanishing to order `k` at `x`.
pub fn fat_point_members<F: Field>(w: &LinearSystem<F>, x: &PointP2<F::Elem>, k: usize) -> Result<Vec<HForm<F::Elem>>> {
    if w.dim() == 0 {
        return Ok(Vec::new());
    }
    let m = jet_matrix(w, x, k - 1)?;
    Ok(kernel_basis(w.field(), &m).iter().map(|c| w.member(c)).collect())
}

/// Whether every order-`k` partial of `f` vanishes at `x`.
pub fn vanishes_to_order<F: Field>(field: &F, f: &HForm<F::Elem>, x: &PointP2<F::Elem>, order: usize) -> Result<bool> {
    if order == 0 {
        return Ok(true);
    }
    check_jet_args(field, f.degree(), order - 1)?;
    for a in monomials(order - 1) {
        if !field.is_zero(&f.partial_multi(field, &a)?.eval(field, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Expected dimension `max(0, binom(d+2,2) − |Z|)`.
pub fn expected_dim(points: usize, d: usize) -> usize {
    monomial_count(d).saturating_sub(points)
}
