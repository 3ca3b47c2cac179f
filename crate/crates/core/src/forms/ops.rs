//! Exact division and greatest common divisors of ternary forms, both by
//! linear algebra on coefficient vectors.

use crate::algebra::{kernel_basis, solve, Field, Mat};
use crate::error::{Error, Result};

use super::hform::{monomial_count, monomial_index, monomials, HForm};

/// Columns are `g·m` for each monomial `m` of degree `k`.
fn multiplication_matrix<F: Field>(field: &F, g: &HForm<F::Elem>, k: usize) -> Mat<F::Elem> {
    let total = g.degree() + k;
    let mut m = crate::algebra::zeros(field, monomial_count(total), monomial_count(k));
    for (j, e) in monomials(k).iter().enumerate() {
        for (ge, c) in monomials(g.degree()).iter().zip(g.coeffs()) {
            if field.is_zero(c) {
                continue;
            }
            let s = [ge[0] + e[0], ge[1] + e[1], ge[2] + e[2]];
            m[(monomial_index(&s), j)] = c.clone();
        }
    }
    m
}

/// `f / g` when `g` divides `f`, `None` otherwise.
pub fn form_exact_div<F: Field>(field: &F, f: &HForm<F::Elem>, g: &HForm<F::Elem>) -> Result<Option<HForm<F::Elem>>> {
    if g.is_zero(field) {
        return Err(Error::DivisionByZero);
    }
    if g.degree() > f.degree() {
        return Ok(if f.is_zero(field) { Some(HForm::zero(field, 0)) } else { None });
    }
    let k = f.degree() - g.degree();
    let m = multiplication_matrix(field, g, k);
    Ok(solve(field, &m, f.coeffs()).map(|q| HForm::new(k, q).expect("length matches")))
}

/// Greatest common divisor up to a scalar, normalised so that its first
/// nonzero coefficient is one. Nonzero inputs only.
///
/// The largest `k` for which `f·b = g·a` has a solution with cofactors of
/// degrees `deg f − k`, `deg g − k` is the gcd degree; then `gcd = f / a`.
pub fn form_gcd<F: Field>(field: &F, f: &HForm<F::Elem>, g: &HForm<F::Elem>) -> Result<HForm<F::Elem>> {
    if f.is_zero(field) || g.is_zero(field) {
        return Err(Error::ZeroPolynomial);
    }
    let (df, dg) = (f.degree(), g.degree());
    for k in (0..=df.min(dg)).rev() {
        let (da, db) = (df - k, dg - k);
        let left = multiplication_matrix(field, f, db);
        let right = multiplication_matrix(field, g, da);
        let rows = left.rows();
        let cols = left.cols() + right.cols();
        let mut m = crate::algebra::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..left.cols() {
                m[(i, j)] = left[(i, j)].clone();
            }
            for j in 0..right.cols() {
                m[(i, left.cols() + j)] = field.neg(&right[(i, j)]);
            }
        }
        if let Some(v) = kernel_basis(field, &m).into_iter().next() {
            let a = HForm::new(da, v[left.cols()..].to_vec())?;
            if a.is_zero(field) {
                continue;
            }
            let c = form_exact_div(field, f, &a)?
                .ok_or_else(|| Error::Degenerate("gcd cofactor does not divide".into()))?;
            return Ok(c.normalized(field));
        }
    }
    unreachable!("k = 0 always yields the trivial relation f·g = g·f")
}
