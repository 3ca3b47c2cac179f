//! Dense univariate polynomials, lowest degree first.

use super::field::{Field, FiniteField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl<E: Clone> UPoly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// `x`
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        UPoly { coeffs: vec![field.zero(), field.one()] }
    }

    /// `x - a`
    pub fn linear_root<F: Field<Elem = E>>(field: &F, a: &E) -> Self {
        UPoly { coeffs: vec![field.neg(a), field.one()] }
    }

    pub fn from_i64s<F: Field<Elem = E>>(field: &F, cs: &[i64]) -> Self {
        Self::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(field, &field.inv(lc).expect("leading coefficient nonzero")),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self::new(
            field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
                .collect(),
        )
    }
}

pub fn upoly_add<F: Field>(field: &F, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = field.zero();
    UPoly::new(
        field,
        (0..n)
            .map(|i| field.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn upoly_sub<F: Field>(field: &F, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = field.zero();
    UPoly::new(
        field,
        (0..n)
            .map(|i| field.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn upoly_mul<F: Field>(field: &F, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    let mut out = vec![field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            field.mul_add_assign(&mut out[i + j], x, y);
        }
    }
    UPoly::new(field, out)
}

/// `(q, r)` with `a = q·b + r` and `deg r < deg b`.
pub fn upoly_divrem<F: Field>(
    field: &F,
    a: &UPoly<F::Elem>,
    b: &UPoly<F::Elem>,
) -> Result<(UPoly<F::Elem>, UPoly<F::Elem>)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lc_inv = field.inv(b.leading().unwrap()).unwrap();
    let mut r = a.coeffs.clone();
    let Some(da) = a.degree() else {
        return Ok((UPoly::zero(), UPoly::zero()));
    };
    if da < db {
        return Ok((UPoly::zero(), a.clone()));
    }
    let mut q = vec![field.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = field.mul(&r[k + db], &lc_inv);
        if field.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            let t = field.mul(&c, bj);
            r[k + j] = field.sub(&r[k + j], &t);
        }
        q[k] = c;
    }
    r.truncate(db);
    Ok((UPoly::new(field, q), UPoly::new(field, r)))
}

pub fn upoly_rem<F: Field>(field: &F, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> Result<UPoly<F::Elem>> {
    upoly_divrem(field, a, b).map(|(_, r)| r)
}

/// Quotient of an exact division; `None` when `b` does not divide `a`.
pub fn upoly_exact_div<F: Field>(
    field: &F,
    a: &UPoly<F::Elem>,
    b: &UPoly<F::Elem>,
) -> Result<Option<UPoly<F::Elem>>> {
    let (q, r) = upoly_divrem(field, a, b)?;
    Ok(r.is_zero().then_some(q))
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn upoly_gcd<F: Field>(field: &F, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = upoly_rem(field, &x, &y).expect("divisor is nonzero");
        x = y;
        y = r;
    }
    x.monic(field)
}

fn require_char_above<F: Field>(field: &F, deg: usize) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && p <= deg as u64 {
        return Err(Error::FieldTooSmall(format!(
            "characteristic {p} does not exceed degree {deg}"
        )));
    }
    Ok(())
}

/// `a / gcd(a, a')`, made monic.
pub fn squarefree_part<F: Field>(field: &F, a: &UPoly<F::Elem>) -> Result<UPoly<F::Elem>> {
    let d = a.degree().ok_or(Error::ZeroPolynomial)?;
    require_char_above(field, d)?;
    let g = upoly_gcd(field, a, &a.derivative(field));
    let q = upoly_exact_div(field, a, &g)?.expect("gcd divides its argument");
    Ok(q.monic(field))
}

pub fn is_squarefree<F: Field>(field: &F, a: &UPoly<F::Elem>) -> bool {
    match a.degree() {
        None => false,
        Some(0) => true,
        Some(_) => upoly_gcd(field, a, &a.derivative(field)).degree() == Some(0),
    }
}

/// `base^e mod m`
pub fn upoly_powmod<F: Field>(
    field: &F,
    base: &UPoly<F::Elem>,
    mut e: u64,
    m: &UPoly<F::Elem>,
) -> Result<UPoly<F::Elem>> {
    let mut acc = upoly_rem(field, &UPoly::constant(field, field.one()), m)?;
    let mut b = upoly_rem(field, base, m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly_rem(field, &upoly_mul(field, &acc, &b), m)?;
        }
        b = upoly_rem(field, &upoly_mul(field, &b, &b), m)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Distinct-degree profile of a squarefree polynomial over a prime field:
/// pairs `(k, total degree of the irreducible factors of degree k)`.
///
/// Uses `gcd(f, x^{p^k} - x)` iteratively; the bucket totals always add up to
/// `deg f`.
pub fn distinct_degree_profile<F: FiniteField>(
    field: &F,
    a: &UPoly<F::Elem>,
) -> Result<Vec<(usize, usize)>> {
    if field.characteristic() == 0 {
        return Err(Error::NotPrimeField);
    }
    let deg = a.degree().ok_or(Error::ZeroPolynomial)?;
    if !is_squarefree(field, a) {
        return Err(Error::NotSquarefree);
    }
    let p = field.order();
    let x = UPoly::x(field);
    let mut f = a.monic(field);
    let mut h = upoly_rem(field, &x, &f)?;
    let mut out = Vec::new();
    let mut k = 0;
    while f.degree().unwrap_or(0) >= 2 * (k + 1) {
        k += 1;
        h = upoly_powmod(field, &h, p, &f)?;
        let g = upoly_gcd(field, &upoly_sub(field, &h, &x), &f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.push((k, gd));
            f = upoly_exact_div(field, &f, &g)?.expect("gcd divides");
            h = upoly_rem(field, &h, &f)?;
        }
    }
    if let Some(d) = f.degree().filter(|&d| d > 0) {
        out.push((d, d));
    }
    debug_assert_eq!(out.iter().map(|b| b.1).sum::<usize>(), deg);
    Ok(out)
}

/// All roots in the prime field, by exhaustive evaluation.
pub fn roots_in_field<F: FiniteField>(field: &F, a: &UPoly<F::Elem>) -> Vec<F::Elem> {
    if a.is_zero() {
        return field.elements();
    }
    (0..field.order())
        .map(|i| field.element(i))
        .filter(|x| field.is_zero(&a.eval(field, x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    #[test]
    fn gcd_and_divrem_basics() {
        let q = Rationals;
        let a = UPoly::from_i64s(&q, &[-1, 0, 1]);
        let b = UPoly::from_i64s(&q, &[-1, 1]);
        assert_eq!(upoly_gcd(&q, &a, &b), b);
        let x3 = UPoly::from_i64s(&q, &[0, 0, 0, 1]);
        let x = UPoly::from_i64s(&q, &[0, 1]);
        let (quo, r) = upoly_divrem(&q, &x3, &x).unwrap();
        assert_eq!(quo, UPoly::from_i64s(&q, &[0, 0, 1]));
        assert!(r.is_zero());
        assert!(matches!(upoly_divrem(&q, &x, &UPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn squarefree_examples() {
        let q = Rationals;
        let sq = UPoly::from_i64s(&q, &[1, -2, 1]);
        assert_eq!(squarefree_part(&q, &sq).unwrap(), UPoly::from_i64s(&q, &[-1, 1]));
        let irr = UPoly::from_i64s(&q, &[1, 0, 1]);
        assert_eq!(squarefree_part(&q, &irr).unwrap(), irr);
        assert!(matches!(squarefree_part(&q, &UPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn profile_of_small_cases() {
        let f = PrimeField::new(101).unwrap();
        // 2 is a non-residue mod 101 (101 ≡ 5 mod 8)
        let quad = UPoly::from_i64s(&f, &[-2, 0, 1]);
        assert_eq!(distinct_degree_profile(&f, &quad).unwrap(), vec![(2, 2)]);
        let lin = UPoly::from_i64s(&f, &[0, 2, -3, 1]); // x(x-1)(x-2)
        assert_eq!(distinct_degree_profile(&f, &lin).unwrap(), vec![(1, 3)]);
        let sq = UPoly::from_i64s(&f, &[1, -2, 1]);
        assert!(matches!(distinct_degree_profile(&f, &sq), Err(Error::NotSquarefree)));
    }

    #[test]
    fn roots_by_evaluation() {
        let f = PrimeField::new(13).unwrap();
        let p = UPoly::from_i64s(&f, &[0, 2, -3, 1]);
        assert_eq!(roots_in_field(&f, &p), vec![0, 1, 2]);
    }
}
