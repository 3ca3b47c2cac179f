//! Sylvester resultants of ternary forms with respect to one variable.

use crate::algebra::{det, solve, Field, Mat, UPoly};
use crate::error::{Error, Result};

use super::hform::{monomial_index, HForm};

/// Numeric Sylvester matrix of `a` (degree `m`) and `b` (degree `n`), highest
/// coefficients first.
pub fn sylvester_matrix<F: Field>(field: &F, a: &UPoly<F::Elem>, m: usize, b: &UPoly<F::Elem>, n: usize) -> Mat<F::Elem> {
    let size = m + n;
    let mut s = crate::algebra::zeros(field, size, size);
    let coeff = |p: &UPoly<F::Elem>, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(|| field.zero());
    for r in 0..n {
        for i in 0..=m {
            s[(r, r + i)] = coeff(a, m - i);
        }
    }
    for r in 0..m {
        for i in 0..=n {
            s[(n + r, r + i)] = coeff(b, n - i);
        }
    }
    s
}

/// `Res_{x_axis}(f, g)`: a form of degree `deg f · deg g` in the two other
/// variables.
///
/// Both forms must have a nonzero constant coefficient on the top power of
/// `x_axis`; otherwise [`Error::NeedsCoordinateChange`] is returned. The
/// result is interpolated from numeric Sylvester determinants along the
/// affine chart where the first remaining variable is one.
pub fn sylvester_resultant<F: Field>(field: &F, f: &HForm<F::Elem>, g: &HForm<F::Elem>, axis: usize) -> Result<HForm<F::Elem>> {
    if axis > 2 {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range")));
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("resultant needs forms of positive degree".into()));
    }
    let top = |h: &HForm<F::Elem>| {
        let mut e = [0; 3];
        e[axis] = h.degree();
        !field.is_zero(h.coeff(&e))
    };
    if !top(f) || !top(g) {
        return Err(Error::NeedsCoordinateChange);
    }
    let total = m * n;
    let p = field.characteristic();
    if p != 0 && p <= total as u64 {
        return Err(Error::FieldTooSmall(format!("resultant of degree {total} needs characteristic > {total}")));
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
    let one = field.one();
    let mut vander = Vec::with_capacity(total + 1);
    let mut values = Vec::with_capacity(total + 1);
    for t in 0..=total {
        let t = field.from_i64(t as i64);
        let a = f.restrict_to_fibre(field, axis, [&one, &t]);
        let b = g.restrict_to_fibre(field, axis, [&one, &t]);
        values.push(det(field, &sylvester_matrix(field, &a, m, &b, n))?);
        vander.push((0..=total).map(|i| field.pow(&t, i as u64)).collect());
    }
    let cs = solve(field, &Mat::from_rows(vander)?, &values).expect("Vandermonde on distinct nodes");
    let mut out = HForm::zero(field, total);
    let mut coeffs = out.coeffs().to_vec();
    for (i, c) in cs.into_iter().enumerate() {
        let mut e = [0; 3];
        e[others[0]] = total - i;
        e[others[1]] = i;
        coeffs[monomial_index(&e)] = c;
    }
    out = HForm::new(total, coeffs)?;
    Ok(out)
}
