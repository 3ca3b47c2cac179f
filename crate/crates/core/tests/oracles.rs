//! Library results against independent brute-force computations.

use logjump::algebra::{det, distinct_degree_profile, rank, roots_in_field, upoly_mul, Field, Mat, PrimeField, UPoly};
use logjump::forms::{curves_through, fat_point_dim, monomials, sylvester_resultant, HForm};
use logjump::geom::{plane_points, random_config, PointConfig, PointP2};
use logjump::intersect::{chern_inverse, chern_mul, tangency_degree, ChernPoly};
use logjump::steiner::{minimal_indices, splitting_type, steiner_pencil};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn leibniz<F: Field>(field: &F, m: &Mat<F::Elem>) -> F::Elem {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // inserting at `pos` adds n-1-pos inversions
                out.push((q, even == ((n - 1 - pos) % 2 == 0)));
            }
        }
        out
    }
    let n = m.rows();
    let mut acc = field.zero();
    for (p, even) in perms(n) {
        let mut t = field.one();
        for (i, &j) in p.iter().enumerate() {
            t = field.mul(&t, &m[(i, j)]);
        }
        acc = if even { field.add(&acc, &t) } else { field.sub(&acc, &t) };
    }
    acc
}

#[test]
fn determinant_against_permutation_expansion() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=6 {
        for _ in 0..4 {
            let m = Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..101)).collect()).unwrap();
            assert_eq!(det(&f, &m).unwrap(), leibniz(&f, &m));
        }
    }
    let q = logjump::algebra::Rationals;
    let m = Mat::from_vec(4, 4, (0..16).map(|i| q.from_i64((i * i) % 7 - 3)).collect()).unwrap();
    assert_eq!(det(&q, &m).unwrap(), leibniz(&q, &m));
}

fn is_irreducible_small(field: &PrimeField, a: &UPoly<u64>) -> bool {
    // degrees 2 and 3 are irreducible exactly when rootless
    a.degree() == Some(1) || roots_in_field(field, a).is_empty()
}

#[test]
fn factor_degrees_against_enumerated_irreducibles() {
    let f = PrimeField::new(7).unwrap();
    let mut irreducible: Vec<Vec<UPoly<u64>>> = vec![Vec::new(); 4];
    for d in 1..=3usize {
        for code in 0..7u64.pow(d as u32) {
            let mut c: Vec<u64> = (0..d).map(|i| code / 7u64.pow(i as u32) % 7).collect();
            c.push(1);
            let p = UPoly::new(&f, c);
            if is_irreducible_small(&f, &p) {
                irreducible[d].push(p);
            }
        }
    }
    assert_eq!(irreducible[1].len(), 7);
    assert_eq!(irreducible[2].len(), (49 - 7) / 2);
    assert_eq!(irreducible[3].len(), (343 - 7) / 3);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let mut product = UPoly::constant(&f, 1);
        let mut expected = [0usize; 4];
        for d in 1..=3 {
            let k = rng.gen_range(0..3usize);
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < k {
                let i = rng.gen_range(0..irreducible[d].len());
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            for i in picked {
                product = upoly_mul(&f, &product, &irreducible[d][i]);
                expected[d] += d;
            }
        }
        if product.degree() == Some(0) {
            continue;
        }
        let profile = distinct_degree_profile(&f, &product).unwrap();
        let got: Vec<(usize, usize)> = (1..=3).filter(|&d| expected[d] > 0).map(|d| (d, expected[d])).collect();
        assert_eq!(profile, got);
    }
}

#[test]
fn resultant_of_split_forms() {
    // f = Π (x2 − aᵢ x0), g = Π (x2 − bⱼ x0 − cⱼ x1): Res = ± Π (aᵢ x0 − bⱼ x0 − cⱼ x1)
    let f = PrimeField::new(10007).unwrap();
    let lin = |a: i64, b: i64, c: i64| HForm::linear([f.from_i64(a), f.from_i64(b), f.from_i64(c)]);
    let a = [2, -5, 7];
    let bc = [(1, 3), (4, -2)];
    let mut ff = HForm::monomial(&f, [0, 0, 0], f.one());
    for &ai in &a {
        ff = ff.mul(&f, &lin(-ai, 0, 1));
    }
    let mut gg = HForm::monomial(&f, [0, 0, 0], f.one());
    for &(b, c) in &bc {
        gg = gg.mul(&f, &lin(-b, -c, 1));
    }
    let mut expected = HForm::monomial(&f, [0, 0, 0], f.one());
    for &ai in &a {
        for &(b, c) in &bc {
            expected = expected.mul(&f, &lin(ai - b, -c, 0));
        }
    }
    let r = sylvester_resultant(&f, &ff, &gg, 2).unwrap();
    assert_eq!(r.degree(), 6);
    assert_eq!(r.normalized(&f), expected.normalized(&f));
}

/// `h⁰(J_Z ⊗ m_x^k(d))` from the partial derivatives of the basis members,
/// without jets.
fn fat_dim_by_partials(z: &PointConfig<PrimeField>, x: &PointP2<u64>, k: usize, d: usize) -> usize {
    let f = z.field();
    let w = curves_through(z, d).unwrap();
    let mut rows = Vec::new();
    for order in 0..k {
        for alpha in monomials(order) {
            rows.push(w.basis().iter().map(|g| g.partial_multi(f, &alpha).unwrap().eval(f, x)).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return w.dim();
    }
    w.dim() - rank(f, &Mat::from_rows(rows).unwrap())
}

#[test]
fn fat_point_dims_against_all_partials() {
    let f = PrimeField::new(101).unwrap();
    let z = random_config(&f, 8, 4, &[1, 2, 3, 4, 5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = plane_points(&f);
    for _ in 0..40 {
        let x = &pts[rng.gen_range(0..pts.len())];
        if z.contains(x) {
            continue;
        }
        for (k, d) in [(1, 3), (2, 3), (3, 4), (2, 4), (3, 5)] {
            assert_eq!(fat_point_dim(&z, x, k, d).unwrap().dim, fat_dim_by_partials(&z, x, k, d), "k={k} d={d}");
        }
    }
}

/// Block-diagonal pencil of Kronecker blocks `L_k` (k × (k+1), `s` on the
/// diagonal and `t` above it).
fn kronecker_blocks(f: &PrimeField, ks: &[usize]) -> (Mat<u64>, Mat<u64>) {
    let rows: usize = ks.iter().sum();
    let cols: usize = ks.iter().map(|k| k + 1).sum();
    let mut b0 = Mat::filled(rows, cols, f.zero());
    let mut b1 = Mat::filled(rows, cols, f.zero());
    let (mut r, mut c) = (0, 0);
    for &k in ks {
        for i in 0..k {
            b0[(r + i, c + i)] = f.one();
            b1[(r + i, c + i + 1)] = f.one();
        }
        r += k;
        c += k + 1;
    }
    (b0, b1)
}

#[test]
fn minimal_indices_of_known_kronecker_forms() {
    let f = PrimeField::new(101).unwrap();
    for ks in [vec![0, 3], vec![1, 2], vec![2, 2], vec![0, 0, 4], vec![1, 1, 1]] {
        let (b0, b1) = kronecker_blocks(&f, &ks);
        // scramble by invertible row and column operations
        let mut rng = ChaCha8Rng::seed_from_u64(ks.len() as u64);
        let (r, c) = (b0.rows(), b0.cols());
        let rand_inv = |n: usize, rng: &mut ChaCha8Rng| loop {
            let m = Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..101)).collect()).unwrap();
            if rank(&f, &m) == n {
                return m;
            }
        };
        let (p, q) = (rand_inv(r, &mut rng), rand_inv(c, &mut rng));
        let mul = |a: &Mat<u64>| logjump::algebra::mat_mul(&f, &logjump::algebra::mat_mul(&f, &p, a).unwrap(), &q).unwrap();
        let mi = minimal_indices(&f, &mul(&b0), &mul(&b1)).unwrap();
        let mut sorted = ks.clone();
        sorted.sort();
        assert_eq!(mi.indices, sorted);
        for (d, &n) in mi.nullities.iter().enumerate() {
            let expected: usize = ks.iter().map(|&k| (d + 1).saturating_sub(k)).sum();
            assert_eq!(n, expected, "d={d}");
        }
    }
}

#[test]
fn splitting_degrees_add_up_everywhere() {
    let f = PrimeField::new(31).unwrap();
    for m in [5, 6, 7] {
        let z = random_config(&f, m, 2, &[1, 2, 3, 4]).unwrap();
        let sp = steiner_pencil(&z).unwrap();
        for x in plane_points(&f) {
            let s = splitting_type(&sp, &x).unwrap();
            assert_eq!(s.eps1 + s.eps2, m - 1);
            assert!(s.eps1 >= 1 && s.eps1 <= (m - 1) / 2);
        }
    }
}

/// `(1 − 2h)^{−N}` by the binomial series.
fn series_inverse_power(n: i64) -> [BigRational; 3] {
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    [r(1), r(2 * n), r(4 * n * (n + 1) / 2)]
}

#[test]
fn chern_arithmetic_against_binomial_series() {
    for n in 2..=12i64 {
        let big_n = n * (n - 1) / 2;
        let c = logjump::intersect::cokernel_chern(n as u64).unwrap();
        assert_eq!(c.a, series_inverse_power(big_n));
        let s = chern_inverse(&c).unwrap();
        assert!(chern_mul(&s, &c).is_one());
        assert!(chern_mul(&c, &s).is_one());
        let deg = &c.a[1] * &c.a[1] - &c.a[2];
        assert_eq!(BigRational::from_integer(BigInt::from(tangency_degree(n as u64).unwrap().deg)), deg);
    }
    let a = ChernPoly::new(3, -1, 5);
    let inv = chern_inverse(&a).unwrap();
    assert!(chern_mul(&a, &inv).is_one());
}
