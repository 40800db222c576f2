//! Small dense machine-integer matrices used for group elements.
//!
//! Automorphisms of root data of rank ≤ 8 have tiny entries, so the hot
//! paths (Weyl group closure, multiplication tables) use `i64` here and fall
//! back to [`IntMatrix`] for anything that needs normal forms.

use std::fmt;

use num_traits::ToPrimitive;

use crate::lattice::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Square matrix from rows; panics on ragged input.
    pub fn square(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows, rows.len()).expect("square matrix rows")
    }

    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Option<Self> {
        Self::from_rows(columns, rows).map(|m| m.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
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

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.to_rows(), self.cols)
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Option<Self> {
        let rows = m.to_i64_rows()?;
        Self::from_rows(&rows, m.cols())
    }

    pub fn det(&self) -> i64 {
        self.to_int_matrix().det().to_i64().expect("determinant fits in i64")
    }

    pub fn inverse_unimodular(&self) -> Option<Self> {
        Self::from_int_matrix(&self.to_int_matrix().inverse_unimodular()?)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], s: i64) -> Vec<i64> {
    a.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = Mat::square(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 2, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), 1);
    }

    #[test]
    fn apply_matches_mul() {
        let a = Mat::square(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(a.apply(&[2, 3]), vec![3, -2]);
        assert_eq!(a.mul(&a).apply(&[2, 3]), vec![-2, -3]);
    }
}
