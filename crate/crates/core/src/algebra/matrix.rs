//! Dense matrices over an exact field.
//!
//! Pivoting is always "first nonzero entry in column order", so reduced
//! forms and kernel bases are reproducible bit for bit.

use std::ops::{Index, IndexMut};

use serde_json::Value;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Mat { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> Index<(usize, usize)> for Mat<E> {
    type Output = E;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Mat<E> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat::filled(rows, cols, field.zero())
}

pub fn identity<F: Field>(field: &F, n: usize) -> Mat<F::Elem> {
    let mut m = zeros(field, n, n);
    for i in 0..n {
        m[(i, i)] = field.one();
    }
    m
}

pub fn mat_mul<F: Field>(field: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let mut acc = out[(i, j)].clone();
                field.mul_add_assign(&mut acc, aik, &b[(k, j)]);
                out[(i, j)] = acc;
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<F: Field>(field: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "matrix-vector shape mismatch");
    (0..a.rows)
        .map(|i| {
            let mut acc = field.zero();
            for (aij, vj) in a.row(i).iter().zip(v) {
                field.mul_add_assign(&mut acc, aij, vj);
            }
            acc
        })
        .collect()
}

/// `Σ cᵢ·Mᵢ` for equally shaped matrices.
pub fn linear_combination<F: Field>(
    field: &F,
    coeffs: &[F::Elem],
    mats: &[&Mat<F::Elem>],
) -> Mat<F::Elem> {
    assert_eq!(coeffs.len(), mats.len());
    let (rows, cols) = (mats[0].rows, mats[0].cols);
    let mut out = zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        assert_eq!((m.rows, m.cols), (rows, cols));
        if field.is_zero(c) {
            continue;
        }
        for (o, x) in out.data.iter_mut().zip(&m.data) {
            field.mul_add_assign(o, c, x);
        }
    }
    out
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Mat<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, m: &Mat<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !field.is_zero(&a[(i, col)])) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        for j in col..a.cols {
            a[(row, j)] = field.mul(&a[(row, j)], &inv);
        }
        for i in 0..a.rows {
            if i == row || field.is_zero(&a[(i, col)]) {
                continue;
            }
            let factor = a[(i, col)].clone();
            for j in col..a.cols {
                let t = field.mul(&factor, &a[(row, j)]);
                a[(i, j)] = field.sub(&a[(i, j)], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: a, rank: pivots.len(), pivots }
}

/// Rank by forward elimination only (no back substitution).
pub fn rank<F: Field>(field: &F, m: &Mat<F::Elem>) -> usize {
    let mut a = m.clone();
    rank_in_place(field, &mut a)
}

pub(crate) fn rank_in_place<F: Field>(field: &F, a: &mut Mat<F::Elem>) -> usize {
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !field.is_zero(&a[(i, col)])) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        for i in row + 1..a.rows {
            if field.is_zero(&a[(i, col)]) {
                continue;
            }
            let factor = field.mul(&a[(i, col)], &inv);
            for j in col..a.cols {
                let t = field.mul(&factor, &a[(row, j)]);
                a[(i, j)] = field.sub(&a[(i, j)], &t);
            }
        }
        row += 1;
    }
    row
}

/// Canonical basis of the right null space: one vector per non-pivot column,
/// with that free coordinate set to one and the other free coordinates zero.
pub fn kernel_basis<F: Field>(field: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let r = rref(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = field.neg(&r.matrix[(row, free)]);
            }
            v
        })
        .collect()
}

/// Some solution of `A·x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(field: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = zeros(field, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let r = rref(field, &aug);
    if r.pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix[(row, a.cols)].clone();
    }
    Some(x)
}

pub fn det<F: Field>(field: &F, m: &Mat<F::Elem>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows == 0 {
        return Ok(field.one());
    }
    Ok(if field.fraction_free() { det_bareiss(field, m) } else { det_gauss(field, m) })
}

fn det_gauss<F: Field>(field: &F, m: &Mat<F::Elem>) -> F::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !field.is_zero(&a[(i, col)])) else {
            return field.zero();
        };
        if p != col {
            a.swap_rows(p, col);
            acc = field.neg(&acc);
        }
        let pivot = a[(col, col)].clone();
        acc = field.mul(&acc, &pivot);
        let inv = field.inv(&pivot).expect("pivot is nonzero");
        for i in col + 1..n {
            if field.is_zero(&a[(i, col)]) {
                continue;
            }
            let factor = field.mul(&a[(i, col)], &inv);
            for j in col..n {
                let t = field.mul(&factor, &a[(col, j)]);
                a[(i, j)] = field.sub(&a[(i, j)], &t);
            }
        }
    }
    acc
}

/// Bareiss elimination: every intermediate entry is a minor of the input, and
/// each division is exact.
fn det_bareiss<F: Field>(field: &F, m: &Mat<F::Elem>) -> F::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = field.one();
    for k in 0..n - 1 {
        if field.is_zero(&a[(k, k)]) {
            let Some(p) = (k + 1..n).find(|&i| !field.is_zero(&a[(i, k)])) else {
                return field.zero();
            };
            a.swap_rows(p, k);
            sign = !sign;
        }
        let prev_inv = field.inv(&prev).expect("previous pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let t = field.sub(
                    &field.mul(&a[(i, j)], &a[(k, k)]),
                    &field.mul(&a[(i, k)], &a[(k, j)]),
                );
                a[(i, j)] = field.mul(&t, &prev_inv);
            }
            a[(i, k)] = field.zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign {
        field.neg(&d)
    } else {
        d
    }
}

pub fn mat_to_json<F: Field>(field: &F, m: &Mat<F::Elem>) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array(m.row(i).iter().map(|e| field.elem_to_json(e)).collect()))
            .collect(),
    )
}

pub fn mat_from_json<F: Field>(field: &F, v: &Value) -> Result<Mat<F::Elem>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|e| field.elem_from_json(e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}
