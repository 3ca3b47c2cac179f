//! Matrices whose entries are forms: symbolic jet matrices, their
//! determinants and maximal minors, the monoidal curve and the minors cutting
//! out the extra jumping points.

use std::collections::HashMap;

use crate::algebra::{det, solve, Field, Mat};
use crate::error::{Error, Result};
use crate::geom::PointConfig;

use super::hform::{monomial_count, monomial_values, monomials, HForm};
use super::system::{curves_through, LinearSystem};

/// Row-major matrix of forms.
pub type FormMatrix<E> = Vec<Vec<HForm<E>>>;

/// Order-`k` partials of the basis of `w`, kept symbolic in `x`: entry
/// `(α, j)` is `∂^α fⱼ`, a form of degree `d − k`.
pub fn symbolic_jet_matrix<F: Field>(w: &LinearSystem<F>, k: usize) -> Result<FormMatrix<F::Elem>> {
    let field = w.field();
    if k > w.degree() {
        return Err(Error::InvalidArgument(format!("jet order {k} exceeds degree {}", w.degree())));
    }
    monomials(k)
        .iter()
        .map(|a| w.basis().iter().map(|f| f.partial_multi(field, a)).collect())
        .collect()
}

/// Numeric matrix obtained by evaluating every entry at `x`.
pub fn eval_form_matrix<F: Field>(field: &F, m: &FormMatrix<F::Elem>, x: &[F::Elem; 3]) -> Mat<F::Elem> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let data = m.iter().flat_map(|r| r.iter().map(|f| f.eval_at(field, x))).collect();
    Mat::from_vec(rows, cols, data).expect("rectangular form matrix")
}

/// Largest size expanded by cofactors; bigger determinants are interpolated.
pub const DIRECT_EXPANSION_MAX: usize = 6;

/// How a symbolic determinant is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetStrategy {
    /// Direct cofactor expansion up to [`DIRECT_EXPANSION_MAX`], interpolation beyond.
    Auto,
    Cofactor,
    Interpolation,
}

fn square_shape<E: Clone>(m: &FormMatrix<E>) -> Result<(usize, usize)> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: m.first().map_or(0, Vec::len) });
    }
    let deg = m.first().and_then(|r| r.first()).map_or(0, HForm::degree);
    if m.iter().flatten().any(|f| f.degree() != deg) {
        return Err(Error::Shape("entries of a symbolic determinant must share a degree".into()));
    }
    Ok((n, deg))
}

pub fn det_forms<F: Field>(field: &F, m: &FormMatrix<F::Elem>) -> Result<HForm<F::Elem>> {
    det_forms_with(field, m, DetStrategy::Auto)
}

pub fn det_forms_with<F: Field>(field: &F, m: &FormMatrix<F::Elem>, strategy: DetStrategy) -> Result<HForm<F::Elem>> {
    let (n, deg) = square_shape(m)?;
    if n == 0 {
        return Ok(HForm::monomial(field, [0, 0, 0], field.one()));
    }
    let direct = match strategy {
        DetStrategy::Auto => n <= DIRECT_EXPANSION_MAX,
        DetStrategy::Cofactor => true,
        DetStrategy::Interpolation => false,
    };
    if direct {
        Ok(det_cofactor(field, m, n, deg))
    } else {
        det_interpolate(field, m, n * deg)
    }
}

/// Laplace expansion along rows, memoised on the set of remaining columns.
fn det_cofactor<F: Field>(field: &F, m: &FormMatrix<F::Elem>, n: usize, deg: usize) -> HForm<F::Elem> {
    fn go<F: Field>(
        field: &F,
        m: &FormMatrix<F::Elem>,
        n: usize,
        deg: usize,
        mask: u32,
        memo: &mut HashMap<u32, HForm<F::Elem>>,
    ) -> HForm<F::Elem> {
        let row = n - mask.count_ones() as usize;
        if row == n {
            return HForm::monomial(field, [0, 0, 0], field.one());
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = HForm::zero(field, deg * (n - row));
        let mut position = 0;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero(field) {
                let minor = go(field, m, n, deg, mask & !(1 << j), memo);
                let term = entry.mul(field, &minor);
                acc = if position % 2 == 0 { acc.add(field, &term) } else { acc.sub(field, &term) }
                    .expect("degrees agree");
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    go(field, m, n, deg, (1u32 << n) - 1, &mut memo)
}

/// Evaluates on the affine lattice `{(i, j, 1) : i + j ≤ D}`, which is
/// unisolvent for forms of degree `D`, and solves for the coefficients.
fn det_interpolate<F: Field>(field: &F, m: &FormMatrix<F::Elem>, total: usize) -> Result<HForm<F::Elem>> {
    let p = field.characteristic();
    if p != 0 && p <= total as u64 {
        return Err(Error::FieldTooSmall(format!(
            "interpolating a degree-{total} determinant needs characteristic > {total}"
        )));
    }
    let n = m.len();
    let mut rows = Vec::with_capacity(monomial_count(total));
    let mut values = Vec::with_capacity(monomial_count(total));
    for i in 0..=total {
        for j in 0..=total - i {
            let x = [field.from_i64(i as i64), field.from_i64(j as i64), field.one()];
            let numeric = Mat::from_rows(
                m.iter().map(|r| r.iter().map(|f| f.eval_at(field, &x)).collect()).collect(),
            )?;
            debug_assert_eq!(numeric.rows(), n);
            values.push(det(field, &numeric)?);
            rows.push(monomial_values(field, total, &x));
        }
    }
    let coeffs = solve(field, &Mat::from_rows(rows)?, &values)
        .ok_or_else(|| Error::Degenerate("interpolation system is singular".into()))?;
    HForm::new(total, coeffs)
}

/// All maximal minors of a tall `r × c` form matrix (`r ≥ c`), one per
/// `c`-subset of rows in lexicographic order.
pub fn maximal_minors<F: Field>(field: &F, m: &FormMatrix<F::Elem>) -> Result<Vec<HForm<F::Elem>>> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    if c > r {
        return Err(Error::Shape(format!("{r}x{c} matrix has no maximal row minors")));
    }
    subsets(r, c)
        .into_iter()
        .map(|rows| {
            let sub: FormMatrix<F::Elem> = rows.iter().map(|&i| m[i].clone()).collect();
            det_forms(field, &sub)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// For `|Z| = 2n + 1`: the determinant of the `binom(n,2)`-square matrix of
/// order-`(n−2)` partials of `H⁰(J_Z(n))`, a form of degree `n(n−1)` vanishing
/// exactly where some degree-`n` curve through `Z` has a point of
/// multiplicity `n − 1`.
pub fn monoidal_det<F: Field>(z: &PointConfig<F>) -> Result<HForm<F::Elem>> {
    monoidal_det_with(z, DetStrategy::Auto)
}

pub fn monoidal_det_with<F: Field>(z: &PointConfig<F>, strategy: DetStrategy) -> Result<HForm<F::Elem>> {
    let m = z.len();
    if m % 2 == 0 || m < 5 {
        return Err(Error::InvalidArgument(format!(
            "monoidal curve needs an odd configuration of at least 5 points, got {m}"
        )));
    }
    let n = (m - 1) / 2;
    let w = curves_through(z, n)?;
    monoidal_det_of_system(&w, n, strategy)
}

/// Monoidal determinant for an explicitly given basis of `H⁰(J_Z(n))`.
pub fn monoidal_det_of_system<F: Field>(w: &LinearSystem<F>, n: usize, strategy: DetStrategy) -> Result<HForm<F::Elem>> {
    let jets = symbolic_jet_matrix(w, n - 2)?;
    let size = n * (n - 1) / 2;
    if jets.len() != size || w.dim() != size {
        return Err(Error::NotSquare { rows: jets.len(), cols: w.dim() });
    }
    det_forms_with(w.field(), &jets, strategy)
}

/// For `|Z| = 2n` with `n ≥ 4`: the maximal minors of the order-`(n−3)`
/// symbolic jet matrix of `H⁰(J_Z(n−1))`. Empty for `n ≤ 3`, where that
/// system has no fat-point members at all.
pub fn gamma_minors<F: Field>(z: &PointConfig<F>) -> Result<Vec<HForm<F::Elem>>> {
    let m = z.len();
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("gamma minors need an even configuration, got {m}")));
    }
    let n = m / 2;
    if n <= 3 {
        return Ok(Vec::new());
    }
    let w = curves_through(z, n - 1)?;
    let expected = n * (n - 3) / 2;
    if w.dim() != expected {
        return Err(Error::Degenerate(format!(
            "h0(J_Z({})) = {} instead of {expected}",
            n - 1,
            w.dim()
        )));
    }
    let jets = symbolic_jet_matrix(&w, n - 3)?;
    maximal_minors(w.field(), &jets)
}
