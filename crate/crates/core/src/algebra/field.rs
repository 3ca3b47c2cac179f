//! Exact scalar fields.
//!
//! Arithmetic goes through a field *context* value rather than through
//! operator overloading on the elements, so that a prime field can carry its
//! modulus at runtime and elements of `𝔽p` stay plain `u64`s.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Which exact field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Default modulus for exhaustive plane scans.
    pub const SCAN_PRIME: u64 = 101;
    /// Default modulus for elimination-heavy runs.
    pub const ELIMINATION_PRIME: u64 = 10007;

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Checks that the field can support Euler-identity jet reduction for forms
    /// up to degree `max_degree` (`p > 2·max_degree`).
    pub fn supports_degree(&self, max_degree: usize) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => *p > 2 * max_degree as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected `q` or `fp:<p>`)")))?
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad modulus in `{s}`: {e}")))?;
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "modulus {p} too large (must fit in 32 bits)"
            )));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

/// Deterministic trial-division primality test; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether determinants should use fraction-free (Bareiss) elimination.
    fn fraction_free(&self) -> bool {
        false
    }

    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    /// Lossy embedding used only for plotting.
    fn to_f64(&self, a: &Self::Elem) -> Option<f64>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn mul_add_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }
}

/// A field whose elements can be enumerated.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn element(&self, i: u64) -> Self::Elem;
    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

/// The rationals, backed by arbitrary-precision integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn fraction_free(&self) -> bool {
        true
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            if let Some(v) = a.numer().to_i64() {
                return Value::from(v);
            }
            return Value::String(a.numer().to_string());
        }
        Value::String(format!("{}/{}", a.numer(), a.denom()))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("expected scalar, got {other}"))),
        }
    }

    fn to_f64(&self, a: &BigRational) -> Option<f64> {
        a.to_f64()
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad rational `{s}`: {e}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|e| bad(&e))?;
    let den: BigInt = den.parse().map_err(|e| bad(&e))?;
    if den.is_zero() {
        return Err(bad(&"zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// `𝔽p` for a prime `p < 2³²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!("modulus {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^32 so the product fits in a u64
        (a * b) % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn mul_add_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = (*a + b * c % self.p) % self.p;
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.reduce_i64(i))
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
            Value::String(s) => {
                let q = parse_rational(s)?;
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                self.div(&num, &den)
            }
            other => Err(Error::Parse(format!("expected scalar, got {other}"))),
        }
    }

    fn to_f64(&self, _a: &u64) -> Option<f64> {
        None
    }
}

impl PrimeField {
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.abs().to_u64().expect("reduced residue fits")
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }
    fn element(&self, i: u64) -> u64 {
        i % self.p
    }
}
