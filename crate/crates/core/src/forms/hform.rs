//! Homogeneous ternary forms over a fixed monomial basis.
//!
//! Monomials `x0^a x1^b x2^c` of degree `d` are ordered lexicographically
//! descending on `(a, b, c)`:
//! `(d,0,0), (d-1,1,0), (d-1,0,1), (d-2,2,0), ...`. Multi-indices of partial
//! derivatives use the same ordering.

use serde_json::{json, Value};

use crate::algebra::{Field, UPoly};
use crate::error::{Error, Result};
use crate::geom::PointP2;

pub type Exponent = [usize; 3];

/// `binom(d + 2, 2)`, the number of ternary monomials of degree `d`.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

pub fn monomials(d: usize) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of `e` in [`monomials`] for its degree.
pub fn monomial_index(e: &Exponent) -> usize {
    let s = e[1] + e[2];
    s * (s + 1) / 2 + e[2]
}

/// Values of all degree-`d` monomials at `x`, in basis order.
pub fn monomial_values<F: Field>(field: &F, d: usize, x: &[F::Elem; 3]) -> Vec<F::Elem> {
    let pows: Vec<Vec<F::Elem>> = x
        .iter()
        .map(|xi| {
            let mut p = Vec::with_capacity(d + 1);
            p.push(field.one());
            for k in 1..=d {
                p.push(field.mul(&p[k - 1], xi));
            }
            p
        })
        .collect();
    monomials(d)
        .iter()
        .map(|e| field.mul(&field.mul(&pows[0][e[0]], &pows[1][e[1]]), &pows[2][e[2]]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HForm<E> {
    degree: usize,
    coeffs: Vec<E>,
}

impl<E: Clone> HForm<E> {
    pub fn new(degree: usize, coeffs: Vec<E>) -> Result<Self> {
        if coeffs.len() != monomial_count(degree) {
            return Err(Error::Shape(format!(
                "{} coefficients for a form of degree {degree}",
                coeffs.len()
            )));
        }
        Ok(HForm { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, e: &Exponent) -> &E {
        &self.coeffs[monomial_index(e)]
    }
}

impl<E: Clone> HForm<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, degree: usize) -> Self {
        HForm { degree, coeffs: vec![field.zero(); monomial_count(degree)] }
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, e: Exponent, c: E) -> Self {
        let mut f = Self::zero(field, e.iter().sum());
        f.coeffs[monomial_index(&e)] = c;
        f
    }

    /// The linear form `c0·x0 + c1·x1 + c2·x2`.
    pub fn linear(coeffs: [E; 3]) -> Self {
        HForm { degree: 1, coeffs: coeffs.to_vec() }
    }

    /// Builds a form from `(coefficient, exponent)` terms with integer coefficients.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, degree: usize, terms: &[(i64, Exponent)]) -> Result<Self> {
        let mut f = Self::zero(field, degree);
        for (c, e) in terms {
            if e.iter().sum::<usize>() != degree {
                return Err(Error::Shape(format!("monomial {e:?} is not of degree {degree}")));
            }
            let i = monomial_index(e);
            f.coeffs[i] = field.add(&f.coeffs[i], &field.from_i64(*c));
        }
        Ok(f)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &PointP2<E>) -> E {
        self.eval_at(field, x.coords())
    }

    pub fn eval_at<F: Field<Elem = E>>(&self, field: &F, x: &[E; 3]) -> E {
        let d = self.degree;
        let vals = monomial_values(field, d, x);
        let mut out = field.zero();
        for (c, v) in self.coeffs.iter().zip(&vals) {
            field.mul_add_assign(&mut out, c, v);
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        HForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| field.mul(a, c)).collect() }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(HForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect(),
        })
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(HForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.sub(a, b)).collect(),
        })
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Shape(format!(
                "degrees differ: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let d = self.degree + other.degree;
        let mut out = Self::zero(field, d);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if field.is_zero(ca) {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if field.is_zero(cb) {
                    continue;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                field.mul_add_assign(&mut out.coeffs[monomial_index(&e)], ca, cb);
            }
        }
        out
    }

    /// Formal partial derivative along axis `i`.
    pub fn partial<F: Field<Elem = E>>(&self, field: &F, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InvalidArgument("cannot differentiate a constant form".into()));
        }
        if i > 2 {
            return Err(Error::InvalidArgument(format!("axis {i} out of range")));
        }
        let mut out = Self::zero(field, self.degree - 1);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if e[i] == 0 || field.is_zero(c) {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.coeffs[monomial_index(&f)] = field.mul(c, &field.from_i64(e[i] as i64));
        }
        Ok(out)
    }

    /// `∂^α f = ∂0^α0 ∂1^α1 ∂2^α2 f`.
    pub fn partial_multi<F: Field<Elem = E>>(&self, field: &F, alpha: &Exponent) -> Result<Self> {
        let k: usize = alpha.iter().sum();
        if k > self.degree {
            return Err(Error::InvalidArgument(format!(
                "order {k} exceeds degree {}",
                self.degree
            )));
        }
        let mut out = Self::zero(field, self.degree - k);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if (0..3).any(|i| e[i] < alpha[i]) || field.is_zero(c) {
                continue;
            }
            let mut factor = 1i64;
            for i in 0..3 {
                for t in 0..alpha[i] {
                    factor *= (e[i] - t) as i64;
                }
            }
            let f = [e[0] - alpha[0], e[1] - alpha[1], e[2] - alpha[2]];
            out.coeffs[monomial_index(&f)] = field.mul(c, &field.from_i64(factor));
        }
        Ok(out)
    }

    /// Substitutes `x = T·y`: the result `g` satisfies `g(y) = f(T y)`.
    pub fn compose_linear<F: Field<Elem = E>>(&self, field: &F, t: &[[E; 3]; 3]) -> Self {
        let rows: Vec<HForm<E>> = t.iter().map(|r| HForm::linear(r.clone())).collect();
        let mut powers: Vec<Vec<HForm<E>>> = Vec::with_capacity(3);
        for r in &rows {
            let mut p = vec![HForm::monomial(field, [0, 0, 0], field.one())];
            for k in 1..=self.degree {
                let next = p[k - 1].mul(field, r);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Self::zero(field, self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            let term = powers[0][e[0]].mul(field, &powers[1][e[1]]).mul(field, &powers[2][e[2]]);
            for (o, x) in out.coeffs.iter_mut().zip(&term.coeffs) {
                field.mul_add_assign(o, c, x);
            }
        }
        out
    }

    /// Coefficients as a polynomial in `x_axis`, each coefficient a binary form
    /// in the other two variables: entry `k` is the coefficient of `x_axis^k`.
    pub fn coefficients_in<F: Field<Elem = E>>(&self, field: &F, axis: usize) -> Vec<HForm<E>> {
        let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        let mut out: Vec<HForm<E>> =
            (0..=self.degree).map(|k| Self::zero(field, self.degree - k)).collect();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            let k = e[axis];
            let mut f = [0; 3];
            f[others[0]] = e[others[0]];
            f[others[1]] = e[others[1]];
            out[k].coeffs[monomial_index(&f)] = c.clone();
        }
        out
    }

    /// Specialises the two variables other than `axis` to `values` and returns
    /// the resulting univariate polynomial in `x_axis`.
    pub fn restrict_to_fibre<F: Field<Elem = E>>(&self, field: &F, axis: usize, values: [&E; 2]) -> UPoly<E> {
        let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        let mut cs = vec![field.zero(); self.degree + 1];
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            let v = field.mul(
                &field.pow(values[0], e[others[0]] as u64),
                &field.pow(values[1], e[others[1]] as u64),
            );
            field.mul_add_assign(&mut cs[e[axis]], c, &v);
        }
        UPoly::new(field, cs)
    }

    /// Binary form (no `x2`) as a univariate polynomial in `t = x1/x0`.
    pub fn dehomogenize_binary<F: Field<Elem = E>>(&self, field: &F) -> Result<UPoly<E>> {
        let mut cs = vec![field.zero(); self.degree + 1];
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            if e[2] != 0 {
                return Err(Error::InvalidArgument("form involves x2".into()));
            }
            cs[e[1]] = c.clone();
        }
        Ok(UPoly::new(field, cs))
    }

    /// Inverse of [`HForm::dehomogenize_binary`] at a declared degree.
    pub fn homogenize_binary<F: Field<Elem = E>>(field: &F, p: &UPoly<E>, degree: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::Shape(format!("polynomial degree exceeds {degree}")));
        }
        let mut f = Self::zero(field, degree);
        for (i, c) in p.coeffs().iter().enumerate() {
            f.coeffs[monomial_index(&[degree - i, i, 0])] = c.clone();
        }
        Ok(f)
    }

    /// Scales so that the first nonzero coefficient is one.
    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.coeffs.iter().find(|c| !field.is_zero(c)) {
            None => self.clone(),
            Some(c) => self.scale(field, &field.inv(c).unwrap()),
        }
    }

    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> Value {
        json!({
            "degree": self.degree,
            "coeffs": self.coeffs.iter().map(|c| field.elem_to_json(c)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json<F: Field<Elem = E>>(field: &F, v: &Value) -> Result<Self> {
        let degree = v["degree"]
            .as_u64()
            .ok_or_else(|| Error::Parse("form needs an integer `degree`".into()))? as usize;
        let coeffs = v["coeffs"]
            .as_array()
            .ok_or_else(|| Error::Parse("form needs a `coeffs` array".into()))?
            .iter()
            .map(|c| field.elem_from_json(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, coeffs)
    }
}
