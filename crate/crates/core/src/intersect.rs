//! Chern classes on the plane, truncated at `h³ = 0`, and the degree counts
//! derived from them.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `a0 + a1·h + a2·h²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPoly {
    pub a: [BigRational; 3],
}

impl ChernPoly {
    pub fn new(a0: i64, a1: i64, a2: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        ChernPoly { a: [r(a0), r(a1), r(a2)] }
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    /// `1 + c·h`, the total Chern class of `O(c)`.
    pub fn line_bundle(c: i64) -> Self {
        Self::new(1, c, 0)
    }

    pub fn is_one(&self) -> bool {
        self.a[0].is_one() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    pub fn c1(&self) -> &BigRational {
        &self.a[1]
    }

    pub fn c2(&self) -> &BigRational {
        &self.a[2]
    }

    /// Integer power; negative exponents go through [`chern_inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { chern_inverse(self)? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = chern_mul(&out, &base);
        }
        Ok(out)
    }
}

impl fmt::Display for ChernPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}h + {}h^2", self.a[0], self.a[1], self.a[2])
    }
}

impl Mul for &ChernPoly {
    type Output = ChernPoly;
    fn mul(self, rhs: &ChernPoly) -> ChernPoly {
        chern_mul(self, rhs)
    }
}

pub fn chern_mul(a: &ChernPoly, b: &ChernPoly) -> ChernPoly {
    let [a0, a1, a2] = &a.a;
    let [b0, b1, b2] = &b.a;
    ChernPoly { a: [a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0] }
}

pub fn chern_inverse(a: &ChernPoly) -> Result<ChernPoly> {
    let [a0, a1, a2] = &a.a;
    if a0.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let i0 = a0.recip();
    let i1 = -(a1 * &i0) * &i0;
    let i2 = -(a1 * &i1 + a2 * &i0) * &i0;
    Ok(ChernPoly { a: [i0, i1, i2] })
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Total Chern class of the cokernel of `S^{n−2}V* ⊗ O(−2) → S^n V* ⊗ O`:
/// `(1 − 2h)^{−binom(n,2)}`.
pub fn cokernel_chern(n: u64) -> Result<ChernPoly> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    ChernPoly::line_bundle(-2).pow(-(binom(n, 2) as i64))
}

/// Rank of that cokernel, `binom(n+2,2) − binom(n,2) = 2n + 1`.
pub fn cokernel_rank(n: u64) -> u64 {
    binom(n + 2, 2) - binom(n, 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangencyDegree {
    pub dim: u64,
    pub deg: u64,
}

/// Dimension and degree of the variety of degree-`n` curves with a point of
/// multiplicity `n − 1`: `dim = 2 + rank − 1`, and `deg` is the `h²`
/// coefficient of the Segre class `c(E)⁻¹`, that is `c₁² − c₂`.
pub fn tangency_degree(n: u64) -> Result<TangencyDegree> {
    let c = cokernel_chern(n)?;
    let s = chern_inverse(&c)?;
    let deg = &s.a[2];
    debug_assert_eq!(deg, &(c.c1() * c.c1() - c.c2()));
    if !deg.is_integer() || deg < &BigRational::zero() {
        return Err(Error::Degenerate(format!("degree {deg} is not a nonnegative integer")));
    }
    let deg = deg.to_integer().to_u64().ok_or_else(|| Error::Degenerate("degree overflows u64".into()))?;
    Ok(TangencyDegree { dim: 2 + cokernel_rank(n) - 1, deg })
}

/// `(n+1)n(n−1)(n−2)/2`
pub fn tangency_degree_closed_form(n: u64) -> u64 {
    (n + 1) * n * (n - 1) * n.saturating_sub(2) / 2
}

/// Length of the jumping-line scheme for `2n` points: `binom((n−1)², 2)`.
pub fn jumping_length(n: u64) -> u64 {
    binom((n - 1) * (n - 1), 2)
}

/// `(total, part on Z, part on Γ)` =
/// `(binom((n−1)²,2), 2n·binom(n−1,2), n(n−1)(n−2)(n−3)/2)`.
pub fn length_parts(n: u64) -> (u64, u64, u64) {
    let z = 2 * n * binom(n - 1, 2);
    let gamma = n * (n - 1) * n.saturating_sub(2) * n.saturating_sub(3) / 2;
    (jumping_length(n), z, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        assert_eq!(chern_mul(&ChernPoly::new(1, 1, 0), &ChernPoly::new(1, -1, 0)), ChernPoly::new(1, 0, -1));
        assert_eq!(chern_inverse(&ChernPoly::new(1, -2, 0)).unwrap(), ChernPoly::new(1, 2, 4));
        assert!(chern_inverse(&ChernPoly::new(0, 1, 0)).is_err());
    }

    #[test]
    fn cokernel_classes() {
        assert_eq!(cokernel_chern(2).unwrap(), ChernPoly::new(1, 2, 4));
        assert_eq!(cokernel_chern(3).unwrap(), ChernPoly::new(1, 6, 24));
        assert_eq!(cokernel_rank(5), 11);
    }

    #[test]
    fn anchors() {
        assert_eq!(tangency_degree(3).unwrap(), TangencyDegree { dim: 8, deg: 12 });
        assert_eq!(tangency_degree(2).unwrap().deg, 0);
        assert_eq!(tangency_degree(4).unwrap().deg, 60);
        assert_eq!(length_parts(4), (36, 24, 12));
        assert_eq!(length_parts(3), (6, 6, 0));
        assert_eq!(length_parts(2), (0, 0, 0));
    }
}
