//! The Steiner pencil of a configuration and splitting types on lines.
//!
//! For `|Z| = m`, multiplication by a linear form `ℓ` induces
//! `A(ℓ): H¹(J_Z) → H¹(J_Z(1))`, where `H¹(J_Z)` is the space of functions on
//! `Z` modulo constants (dimension `m − 1`) and `H¹(J_Z(1))` is the space of
//! functions modulo restrictions of linear forms (dimension `m − 3`). Its
//! kernel, as `ℓ` varies over the dual plane, is the rank-2 bundle whose
//! jumping lines we are after; restricted to the pencil of lines through a
//! point `x` it becomes a `(m−3) × (m−1)` matrix pencil `s·B0 + t·B1` whose
//! Kronecker column indices give the splitting.

use serde_json::{json, Value};

use crate::algebra::{linear_combination, rank, rank_in_place, rref, zeros, Field, Mat};
use crate::algebra::matrix::{mat_from_json, mat_to_json};
use crate::error::{Error, Result};
use crate::geom::{dual_line_basis, PointConfig, PointP2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerPencil<F: Field> {
    config: PointConfig<F>,
    a: [Mat<F::Elem>; 3],
}

impl<F: Field> SteinerPencil<F> {
    pub fn m(&self) -> usize {
        self.config.len()
    }

    pub fn config(&self) -> &PointConfig<F> {
        &self.config
    }

    pub fn field(&self) -> &F {
        self.config.field()
    }

    /// `A0`, `A1`, `A2`.
    pub fn matrices(&self) -> &[Mat<F::Elem>; 3] {
        &self.a
    }

    /// `A(ℓ) = ℓ₀A0 + ℓ₁A1 + ℓ₂A2`.
    pub fn eval(&self, l: &[F::Elem; 3]) -> Mat<F::Elem> {
        linear_combination(self.field(), l, &[&self.a[0], &self.a[1], &self.a[2]])
    }

    /// The lifts used for the points are their normalized representatives.
    pub fn lifts(&self) -> &[PointP2<F::Elem>] {
        self.config.points()
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "m": self.m(),
            "A": self.a.iter().map(|a| mat_to_json(f, a)).collect::<Vec<_>>(),
        })
    }

    /// Reads the `{"m", "A"}` snapshot back against its configuration.
    pub fn from_json(config: PointConfig<F>, v: &Value) -> Result<Self> {
        let m = v["m"].as_u64().ok_or_else(|| Error::Parse("pencil needs `m`".into()))? as usize;
        if m != config.len() {
            return Err(Error::Parse(format!("pencil has m = {m}, configuration has {}", config.len())));
        }
        let arr = v["A"].as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("pencil needs three matrices".into()))?;
        let f = config.field().clone();
        let a = [mat_from_json(&f, &arr[0])?, mat_from_json(&f, &arr[1])?, mat_from_json(&f, &arr[2])?];
        for x in &a {
            if x.rows() != m - 3 || x.cols() != m - 1 {
                return Err(Error::Parse(format!("pencil matrices must be {}x{}", m - 3, m - 1)));
            }
        }
        Ok(SteinerPencil { config, a })
    }
}

/// Builds `A0, A1, A2` for a configuration of at least four points.
///
/// `H¹(J_Z)` uses the basis `e_1, …, e_{m−1}` (the complement of the
/// constants). `H¹(J_Z(1))` is identified with the coordinates outside the
/// pivot columns of the reduced `3 × m` matrix of lifts.
pub fn steiner_pencil<F: Field>(z: &PointConfig<F>) -> Result<SteinerPencil<F>> {
    let m = z.len();
    if m < 4 {
        return Err(Error::InvalidArgument(format!("Steiner pencil needs at least 4 points, got {m}")));
    }
    let field = z.field();
    let lifts = Mat::from_rows((0..3).map(|k| z.points().iter().map(|p| p.coords()[k].clone()).collect()).collect())?;
    let red = rref(field, &lifts);
    if red.rank != 3 {
        return Err(Error::Degenerate("configuration spans only a line".into()));
    }
    let free: Vec<usize> = (0..m).filter(|j| !red.pivots.contains(j)).collect();
    let mut a = [zeros(field, m - 3, m - 1), zeros(field, m - 3, m - 1), zeros(field, m - 3, m - 1)];
    for j in 1..m {
        let zj = z.points()[j].coords();
        // projection of e_j modulo the row space of the lifts
        let image: Vec<F::Elem> = match red.pivots.iter().position(|&p| p == j) {
            None => free.iter().map(|&c| if c == j { field.one() } else { field.zero() }).collect(),
            Some(r) => free.iter().map(|&c| field.neg(&red.matrix[(r, c)])).collect(),
        };
        for k in 0..3 {
            if field.is_zero(&zj[k]) {
                continue;
            }
            for (i, v) in image.iter().enumerate() {
                a[k][(i, j - 1)] = field.mul(&zj[k], v);
            }
        }
    }
    Ok(SteinerPencil { config: z.clone(), a })
}

/// The pencil restricted to the lines through `x`: `(A(ℓ0), A(ℓ1))` for the
/// basis `(ℓ0, ℓ1)` of linear forms vanishing at `x`.
pub fn restrict_to_dual_line<F: Field>(sp: &SteinerPencil<F>, x: &PointP2<F::Elem>) -> (Mat<F::Elem>, Mat<F::Elem>) {
    let [l0, l1] = dual_line_basis(sp.field(), x);
    (sp.eval(&l0), sp.eval(&l1))
}

/// Kronecker column minimal indices of `s·B0 + t·B1`, with the nullity
/// sequence that determined them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalIndices {
    /// Ascending.
    pub indices: Vec<usize>,
    /// `N_0, N_1, …`: dimension of the space of degree-`d` polynomial kernel
    /// vectors.
    pub nullities: Vec<usize>,
}

/// Block matrix of the map `v(s,t) ↦ (sB0 + tB1)·v(s,t)` on degree-`d`
/// polynomial vectors.
fn degree_block<F: Field>(field: &F, b0: &Mat<F::Elem>, b1: &Mat<F::Elem>, d: usize) -> Mat<F::Elem> {
    let (r, c) = (b0.rows(), b0.cols());
    let mut m = zeros(field, r * (d + 2), c * (d + 1));
    for j in 0..=d {
        for i in 0..r {
            for k in 0..c {
                m[(j * r + i, j * c + k)] = b0[(i, k)].clone();
                m[((j + 1) * r + i, j * c + k)] = b1[(i, k)].clone();
            }
        }
    }
    m
}

/// Rank of `B0 + λB1` maximised over enough values of `λ` to miss every
/// point where the pencil drops rank.
pub fn generic_rank<F: Field>(field: &F, b0: &Mat<F::Elem>, b1: &Mat<F::Elem>) -> usize {
    let full = b0.rows().min(b0.cols());
    let mut best = rank(field, b1);
    let tries = match field.characteristic() {
        0 => full as u64 + 1,
        p => p.min(full as u64 + 1),
    };
    for lam in 0..tries {
        if best == full {
            break;
        }
        let m = linear_combination(field, &[field.one(), field.from_i64(lam as i64)], &[b0, b1]);
        best = best.max(rank(field, &m));
    }
    best
}

/// Column minimal indices of a pencil of full row rank.
///
/// `N_d = Σ max(0, d − κᵢ + 1)`, so the increment `N_d − N_{d−1}` counts the
/// indices `κᵢ ≤ d`. The loop stops once all `cols − rows` indices are found.
pub fn minimal_indices<F: Field>(field: &F, b0: &Mat<F::Elem>, b1: &Mat<F::Elem>) -> Result<MinimalIndices> {
    if b0.rows() != b1.rows() || b0.cols() != b1.cols() {
        return Err(Error::Shape("pencil matrices differ in shape".into()));
    }
    let (r, c) = (b0.rows(), b0.cols());
    let rho = generic_rank(field, b0, b1);
    if rho < r {
        return Err(Error::RankDeficientPencil { rank: rho, rows: r });
    }
    let count = c - rho;
    let mut indices = Vec::with_capacity(count);
    let mut nullities = Vec::new();
    let mut prev = 0;
    let mut d = 0;
    while indices.len() < count {
        if d > c {
            return Err(Error::Degenerate(format!("minimal indices not found below degree {c}")));
        }
        let mut m = degree_block(field, b0, b1, d);
        let n = c * (d + 1) - rank_in_place(field, &mut m);
        nullities.push(n);
        let at_most_d = n - prev;
        while indices.len() < at_most_d.min(count) {
            indices.push(d);
        }
        prev = n;
        d += 1;
    }
    Ok(MinimalIndices { indices, nullities })
}

/// Splitting type `(ε₁ ≤ ε₂)` of the bundle on the line `x∨`: the degrees
/// `a, b` with restriction `O(−a) ⊕ O(−b)` of the kernel bundle, one more
/// than the corresponding Kronecker indices. `ε₁ + ε₂ = m − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pub eps1: usize,
    pub eps2: usize,
}

impl SplittingType {
    pub fn from_minimal_indices(mi: &MinimalIndices) -> Result<Self> {
        match mi.indices[..] {
            [a, b] => Ok(SplittingType { eps1: a + 1, eps2: b + 1 }),
            _ => Err(Error::Shape(format!("expected two minimal indices, got {}", mi.indices.len()))),
        }
    }

    /// `floor((m−1)/2) − ε₁`: zero off the jumping lines.
    pub fn order(&self) -> usize {
        (self.eps1 + self.eps2) / 2 - self.eps1
    }
}

pub fn splitting_type<F: Field>(sp: &SteinerPencil<F>, x: &PointP2<F::Elem>) -> Result<SplittingType> {
    let (b0, b1) = restrict_to_dual_line(sp, x);
    SplittingType::from_minimal_indices(&minimal_indices(sp.field(), &b0, &b1)?)
}

/// Order of `x∨` as a jumping line; zero when it is not one.
pub fn jumping_order<F: Field>(sp: &SteinerPencil<F>, x: &PointP2<F::Elem>) -> Result<usize> {
    Ok(splitting_type(sp, x)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity, PrimeField, Rationals};
    use crate::geom::{default_validation_degrees, random_config};

    #[test]
    fn toy_pencil() {
        let q = Rationals;
        let i2 = identity(&q, 2);
        let mut b0 = zeros(&q, 2, 3);
        let mut b1 = zeros(&q, 2, 3);
        for i in 0..2 {
            for j in 0..2 {
                b0[(i, j)] = i2[(i, j)].clone();
                b1[(i, j + 1)] = i2[(i, j)].clone();
            }
        }
        let mi = minimal_indices(&q, &b0, &b1).unwrap();
        assert_eq!(mi.indices, vec![2]);
        assert_eq!(mi.nullities, vec![0, 0, 1]);
    }

    #[test]
    fn sizes_and_generic_rank() {
        let f = PrimeField::new(101).unwrap();
        for (m, seed) in [(7, 1), (8, 2)] {
            let z = random_config(&f, m, seed, &default_validation_degrees(m)).unwrap();
            let sp = steiner_pencil(&z).unwrap();
            for a in sp.matrices() {
                assert_eq!((a.rows(), a.cols()), (m - 3, m - 1));
            }
            let l = [f.from_i64(3), f.from_i64(58), f.from_i64(17)];
            assert_eq!(rank(&f, &sp.eval(&l)), m - 3);
        }
    }

    #[test]
    fn eight_points_generic_and_on_z() {
        let f = PrimeField::new(101).unwrap();
        let z = random_config(&f, 8, 5, &default_validation_degrees(8)).unwrap();
        let sp = steiner_pencil(&z).unwrap();
        for p in z.points() {
            assert_eq!(splitting_type(&sp, p).unwrap(), SplittingType { eps1: 1, eps2: 6 });
            assert_eq!(jumping_order(&sp, p).unwrap(), 2);
        }
        let x = PointP2::from_i64s(&f, [12, 77, 1]).unwrap();
        let st = splitting_type(&sp, &x).unwrap();
        assert_eq!(st.eps1 + st.eps2, 7);
    }

    #[test]
    fn json_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let z = random_config(&f, 6, 3, &default_validation_degrees(6)).unwrap();
        let sp = steiner_pencil(&z).unwrap();
        let back = SteinerPencil::from_json(z.clone(), &sp.to_json()).unwrap();
        assert_eq!(back, sp);
    }
}
