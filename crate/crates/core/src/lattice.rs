//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here works on dense [`IntMatrix`] values. Kernels and quotients
//! are returned in Hermite-reduced form so that results are deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. `cols` is needed so that
    /// an empty row list still has a well-defined width.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            m.data[i * cols..(i + 1) * cols].clone_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_unimodular() {
            return None;
        }
        // U·M·V = I, so M⁻¹ = V·U.
        let (u, d, v) = smith_normal_form(self);
        debug_assert!(d.is_identity());
        Some(v.mul(&u))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: returns `(U, D, V)` with `U·M·V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries `d₁ | d₂ | …`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            // Pivot: nonzero entry of least absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            if let Some(i) = bad_row {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, a, v)
}

/// Row-style Hermite normal form of the row lattice of `m`: nonzero rows only,
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for j in 0..c {
        if pivot_row == r {
            break;
        }
        loop {
            let best = (pivot_row..r)
                .filter(|&i| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(x, j)].abs().cmp(&a[(y, j)].abs()));
            let Some(bi) = best else { break };
            a.swap_rows(pivot_row, bi);
            let mut done = true;
            for i in pivot_row + 1..r {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = -a[(i, j)].div_floor(&a[(pivot_row, j)]);
                a.add_row_multiple(i, pivot_row, &q);
                done &= a[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(pivot_row, j)].is_zero() {
            continue;
        }
        if a[(pivot_row, j)].is_negative() {
            a.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = -a[(i, j)].div_floor(&a[(pivot_row, j)]);
            a.add_row_multiple(i, pivot_row, &q);
        }
        pivots.push(j);
        pivot_row += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_big_rows(&rows, c)
}

/// Basis of the saturated kernel lattice `{v : M·v = 0}`, in Hermite form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (_, d, v) = smith_normal_form(m);
    let rank = (0..d.rows.min(d.cols)).take_while(|&i| !d[(i, i)].is_zero()).count();
    let basis: Vec<Vec<BigInt>> = (rank..m.cols).map(|j| v.column(j)).collect();
    if basis.is_empty() {
        return basis;
    }
    hermite_normal_form(&IntMatrix::from_big_rows(&basis, m.cols)).to_rows()
}

/// `S` with `P·S = I`, when `P` maps onto `ℤ^rows`.
pub fn right_inverse(p: &IntMatrix) -> Option<IntMatrix> {
    let (u, d, v) = smith_normal_form(p);
    let f = p.rows;
    if (0..f).any(|i| i >= d.cols || !d[(i, i)].is_one()) {
        return None;
    }
    let mut vf = IntMatrix::zeros(p.cols, f);
    for i in 0..p.cols {
        for j in 0..f {
            vf[(i, j)] = v[(i, j)].clone();
        }
    }
    Some(vf.mul(&u))
}

/// `L` with `L·A = I`, when the columns of `A` span a saturated sublattice.
pub fn left_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    right_inverse(&a.transpose()).map(|s| s.transpose())
}

/// Quotient `ℤ^rank / span(relations)`, split into its free part (through
/// `projection`) and its torsion invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub ambient_rank: usize,
    pub relation_generators: Vec<Vec<BigInt>>,
    pub free_rank: usize,
    /// `free_rank × ambient_rank`.
    pub projection: IntMatrix,
    /// A right inverse of `projection`: `projection · section = I`.
    pub section: IntMatrix,
    pub torsion_invariants: Vec<BigInt>,
}

pub fn quotient_lattice(rank: usize, relations: &[Vec<BigInt>]) -> LatticeQuotient {
    let rel = IntMatrix::from_big_rows(relations, rank);
    let kernel = integer_kernel(&rel);
    let projection = IntMatrix::from_big_rows(&kernel, rank);
    let section = right_inverse(&projection).expect("saturated kernel basis has a right inverse");
    let (_, d, _) = smith_normal_form(&rel);
    let torsion_invariants = (0..d.rows.min(d.cols))
        .map(|i| d[(i, i)].clone())
        .filter(|x| *x > BigInt::one())
        .collect();
    LatticeQuotient {
        ambient_rank: rank,
        relation_generators: relations.to_vec(),
        free_rank: kernel.len(),
        projection,
        section,
        torsion_invariants,
    }
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    out.data[i * other.cols + j] += v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.data.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

/// Unique rational solution `c` of `A·c = b` when `A` has full column rank
/// and `b` lies in its column span.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let (r, c) = (a.rows, a.cols);
    assert_eq!(b.len(), r);
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigRational> =
                a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(BigRational::from_integer(b[i].clone()));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for j in 0..c {
        let p = (pr..r).find(|&i| !m[i][j].is_zero())?;
        m.swap(pr, p);
        let inv = m[pr][j].recip();
        for x in m[pr].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != pr && !m[i][j].is_zero() {
                let f = m[i][j].clone();
                for k in 0..=c {
                    let v = &f * &m[pr][k];
                    m[i][k] -= v;
                }
            }
        }
        pivot_cols.push(j);
        pr += 1;
    }
    if (pr..r).any(|i| !m[i][c].is_zero()) {
        return None;
    }
    Some((0..c).map(|j| m[j][c].clone()).collect())
}

/// Rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    hermite_normal_form(m).rows()
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]], cols: usize) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols)
    }

    fn check_snf(a: &IntMatrix) {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(u.mul(a).mul(&v), d);
        assert!(u.is_unimodular() && v.is_unimodular());
        let k = d.rows().min(d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        for i in 0..k {
            assert!(!d[(i, i)].is_negative());
            if i + 1 < k {
                let (x, y) = (&d[(i, i)], &d[(i + 1, i + 1)]);
                assert!(if x.is_zero() { y.is_zero() } else { y.is_multiple_of(x) });
            }
        }
    }

    #[test]
    fn snf_diag_2_3() {
        let (_, d, _) = smith_normal_form(&m(&[&[2, 0], &[0, 3]], 2));
        assert_eq!(d, m(&[&[1, 0], &[0, 6]], 2));
    }

    #[test]
    fn snf_zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let (u, d, v) = smith_normal_form(&z);
        assert!(d.is_zero());
        assert!(u.is_identity() && v.is_identity());
    }

    #[test]
    fn snf_row_vector() {
        let a = m(&[&[1, -1]], 2);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, m(&[&[1, 0]], 2));
        assert_eq!(u.mul(&a).mul(&v), d);
        assert!(u.is_unimodular() && v.is_unimodular());
    }

    #[test]
    fn kernel_examples() {
        assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
        assert_eq!(integer_kernel(&m(&[&[1, -1]], 2)), vec![big_vec(&[1, 1])]);
        // swap 1 <-> 3 minus identity
        let p = m(&[&[-1, 0, 1], &[0, 0, 0], &[1, 0, -1]], 3);
        assert_eq!(integer_kernel(&p), vec![big_vec(&[1, 0, 1]), big_vec(&[0, 1, 0])]);
    }

    #[test]
    fn kernel_swap_matches_exhaustive_fixed_points() {
        // Oracle: every small vector fixed by the swap lies in the span of the basis.
        let basis = integer_kernel(&m(&[&[-1, 0, 1], &[0, 0, 0], &[1, 0, -1]], 3));
        let bm = IntMatrix::from_big_rows(&basis, 3).transpose();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let fixed = [c, b, a] == [a, b, c];
                    let in_span = solve_rational(&bm, &big_vec(&[a, b, c]))
                        .is_some_and(|s| s.iter().all(|x| x.is_integer()));
                    assert_eq!(fixed, in_span, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_lattice(2, &[big_vec(&[1, -1])]);
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.projection, m(&[&[1, 1]], 2));
        assert!(q.torsion_invariants.is_empty());

        let q = quotient_lattice(2, &[]);
        assert_eq!(q.free_rank, 2);
        assert!(q.projection.is_identity());

        let q = quotient_lattice(2, &[big_vec(&[2, 0])]);
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.projection, m(&[&[0, 1]], 2));
        assert_eq!(q.torsion_invariants, vec![BigInt::from(2)]);
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]], 2);
        assert_eq!(a.det(), BigInt::one());
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]], 2).inverse_unimodular().is_none());
    }

    #[test]
    fn solve_rational_unique() {
        let a = m(&[&[2, -1], &[-1, 2]], 2);
        let sol = solve_rational(&a, &big_vec(&[1, 1])).unwrap();
        assert_eq!(sol, vec![BigRational::from_integer(1.into()); 2]);
        let col = m(&[&[1], &[1]], 1);
        assert!(solve_rational(&col, &big_vec(&[1, 0])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants(a in small_matrix()) {
            check_snf(&a);
        }

        #[test]
        fn kernel_is_saturated(a in small_matrix()) {
            let basis = integer_kernel(&a);
            for b in &basis {
                prop_assert!(a.mul_vec(b).iter().all(Zero::is_zero));
            }
            // Small solutions lie in the integer span of the basis.
            if !basis.is_empty() && a.cols() <= 3 {
                let bm = IntMatrix::from_big_rows(&basis, a.cols()).transpose();
                let ranges: Vec<i64> = (-3..=3).collect();
                let mut idx = vec![0usize; a.cols()];
                loop {
                    let v: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(ranges[i])).collect();
                    if a.mul_vec(&v).iter().all(Zero::is_zero) {
                        let c = solve_rational(&bm, &v).expect("in rational span");
                        prop_assert!(c.iter().all(|x| x.is_integer()));
                    }
                    let mut k = 0;
                    while k < idx.len() {
                        idx[k] += 1;
                        if idx[k] < ranges.len() { break; }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == idx.len() { break; }
                }
            }
        }

        #[test]
        fn quotient_projection_has_section(a in small_matrix()) {
            let rels = a.to_rows();
            let q = quotient_lattice(a.cols(), &rels);
            for r in &rels {
                prop_assert!(q.projection.mul_vec(r).iter().all(Zero::is_zero));
            }
            prop_assert!(q.projection.mul(&q.section).is_identity());
        }
    }
}
