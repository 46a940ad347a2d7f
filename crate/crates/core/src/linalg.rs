//! Dense exact matrices.
//!
//! Entries are stored row-major. Throughout the crate `M[row][col]` holds the
//! operator entry with the upper index on the row, so `M^β_α` sits at `(β, α)`
//! and row vectors multiply on the left.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::polyring::{Coeff, FieldCoeff};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: Coeff> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type ExactMatrix = Matrix<BigRational>;

impl<R: Coeff> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| R::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::<R>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    out.data[i * other.cols + j].fma_in(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row vector times matrix: `(v M)_j = Σ_i v_i M_{ij}`.
    pub fn left_apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![R::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                o.fma_in(vi, self.get(i, j));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc.fma_in(self.get(i, j), vj);
                }
                acc
            })
            .collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_square()
            && self.is_upper_triangular()
            && (0..self.rows).all(|i| self.get(i, i).is_one())
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    /// Inverse of a unit upper triangular matrix, valid over any ring.
    pub fn unit_upper_inverse(&self) -> Option<Self> {
        if !self.is_unit_upper_triangular() {
            return None;
        }
        let n = self.rows;
        let mut inv = Matrix::identity(n);
        // Solve column by column from the bottom: X = M^{-1}, M X = I.
        for c in 0..n {
            for r in (0..c).rev() {
                let mut acc = R::zero();
                for k in r + 1..=c {
                    acc.fma_in(self.get(r, k), inv.get(k, c));
                }
                inv.set(r, c, acc.neg_ref());
            }
        }
        Some(inv)
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix picking the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, R, R)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((self.rows, self.cols, R::zero(), R::zero()));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
            .map(|(r, c)| (r, c, self.get(r, c).clone(), other.get(r, c).clone()))
    }
}

impl<R: FieldCoeff> Matrix<R> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                m.data.swap(row * m.cols + c, p * m.cols + c);
            }
            let inv = m.get(row, col).inv();
            for c in 0..m.cols {
                let v = m.get(row, c).mul_ref(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c).sub_ref(&f.mul_ref(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<R>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![R::zero(); self.cols];
                v[f] = R::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(r, f).neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        if let Some(inv) = self.unit_upper_inverse() {
            return Some(inv);
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                R::one()
            } else {
                R::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }
}

/// Rescales a rational vector to coprime integers with a positive first nonzero entry.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| if sign { -(x / &g) } else { x / &g })
        .collect()
}

impl<R: Coeff> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }

    #[test]
    fn unit_upper_inverse_over_integers() {
        let m = Matrix::<BigInt>::from_i64_rows(&[&[1, 2, 3], &[0, 1, 4], &[0, 0, 1]]);
        let inv = m.unit_upper_inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let not_unit = Matrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(not_unit.unit_upper_inverse().is_none());
    }

    #[test]
    fn general_inverse_and_rank() {
        let m = Matrix::<Q>::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(1), q(1), q(1)]);
        assert!(m.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![
            Q::new(BigInt::from(-1), BigInt::from(2)),
            q(-1),
            Q::new(BigInt::from(-3), BigInt::from(2)),
        ];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn left_and_right_application() {
        let m = Matrix::<BigInt>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let v = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(m.left_apply(&v), vec![BigInt::from(4), BigInt::from(6)]);
        assert_eq!(m.apply(&v), vec![BigInt::from(3), BigInt::from(7)]);
        assert_eq!(m.transpose().apply(&v), m.left_apply(&v));
    }
}
