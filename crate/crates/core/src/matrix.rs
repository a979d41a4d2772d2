//! Dense matrices over a commutative ring.
//!
//! Over a [`Field`] we provide reduced row echelon form, kernels, rank and
//! inverses. Over any [`Ring`] we provide the characteristic polynomial
//! (Berkowitz, no divisions) and the Pfaffian (expansion along the first
//! row), which is what the polynomial-entry matrices of a Higgs field need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>, // row major
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (0..i).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// The matrix with the listed rows and columns removed.
    pub fn minor(&self, skip_rows: &[usize], skip_cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !skip_rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !skip_cols.contains(j)).collect();
        Self::from_fn(keep_r.len(), keep_c.len(), |i, j| {
            self.get(keep_r[i], keep_c[j]).clone()
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    /// Coefficients `s_1, ..., s_n` of `det(x I - M) = x^n + s_1 x^{n-1} + ... + s_n`.
    ///
    /// Berkowitz's algorithm: only ring operations, so polynomial entries
    /// stay polynomial throughout.
    pub fn char_poly(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Vec::new());
        }
        // descending coefficient vector of the leading principal k x k block
        let mut coeffs = vec![T::one(), -self.get(0, 0).clone()];
        for k in 1..n {
            let lead = self.minor(&(k..n).collect::<Vec<_>>(), &(k..n).collect::<Vec<_>>());
            let col: Vec<T> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let row: Vec<T> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let corner = self.get(k, k).clone();

            // first column of the Toeplitz factor: 1, -a, -R C, -R A C, ...
            let mut toeplitz = Vec::with_capacity(k + 2);
            toeplitz.push(T::one());
            toeplitz.push(-corner);
            let mut power_col = col;
            for _ in 0..k {
                let dot = row
                    .iter()
                    .zip(&power_col)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                toeplitz.push(-dot);
                power_col = lead.mul_vec(&power_col);
            }

            let mut next = vec![T::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, c) in coeffs.iter().enumerate() {
                    if i >= j {
                        *slot = slot.clone() + toeplitz[i - j].clone() * c.clone();
                    }
                }
            }
            coeffs = next;
        }
        Ok(coeffs.into_iter().skip(1).collect())
    }

    /// Determinant read off the characteristic polynomial.
    pub fn determinant(&self) -> Result<T> {
        let n = self.rows;
        let s = self.char_poly()?;
        Ok(match s.last() {
            None => T::one(),
            Some(last) if n.is_multiple_of(2) => last.clone(),
            Some(last) => -last.clone(),
        })
    }

    /// Pfaffian of an antisymmetric matrix of even size.
    pub fn pfaffian(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        if self.rows % 2 == 1 {
            return Err(Error::OddDimension(self.rows));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_rec(&idx))
    }

    fn pfaffian_rec(&self, idx: &[usize]) -> T {
        if idx.is_empty() {
            return T::one();
        }
        let first = idx[0];
        let mut acc = T::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let a = self.get(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let term = a.clone() * self.pfaffian_rec(&rest);
            // sign (-1)^(pos+1) with pos counted from 0
            acc = if pos % 2 == 1 { acc + term } else { acc - term };
        }
        acc
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order, normalized to 1 in its own free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Gaussian-elimination determinant, independent of [`Matrix::char_poly`].
    pub fn det_by_elimination(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(T::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            let inv = pivot.inverse().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix add shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sub shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix multiply shape")
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|a| -a.clone())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::{Poly, PolyMatrix, QMatrix, Rational};

    fn q(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn z() -> Poly {
        Poly::var()
    }

    fn c(v: i64) -> Poly {
        Poly::constant(rat(v))
    }

    #[test]
    fn kernel_examples() {
        assert!(q(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
        let k = q(&[&[0, 0, 0], &[0, 0, 0]]).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(k[0], vec![rat(1), rat(0), rat(0)]);
        let k = q(&[&[1, 1, 0], &[0, 0, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1), rat(0)]]);
    }

    #[test]
    fn char_poly_examples() {
        let m: PolyMatrix = Matrix::from_rows(vec![vec![c(0), c(1)], vec![z(), c(0)]]).unwrap();
        assert_eq!(m.char_poly().unwrap(), vec![Poly::zero(), -z()]);
        let zero: PolyMatrix = Matrix::zeros(3, 3);
        assert!(zero.char_poly().unwrap().iter().all(Zero::is_zero));
        let nil: PolyMatrix = Matrix::from_rows(vec![vec![c(0), z()], vec![c(0), c(0)]]).unwrap();
        assert!(nil.char_poly().unwrap().iter().all(Zero::is_zero));
        let rect: PolyMatrix = Matrix::zeros(2, 3);
        assert!(rect.char_poly().is_err());
    }

    #[test]
    fn char_poly_three_by_three() {
        // companion matrix of x^3 - 6x^2 + 11x - 6
        let m = q(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(m.char_poly().unwrap(), vec![rat(-6), rat(11), rat(-6)]);
        assert_eq!(m.determinant().unwrap(), rat(6));
        assert_eq!(m.det_by_elimination().unwrap(), rat(6));
    }

    #[test]
    fn pfaffian_examples() {
        let a = z() + c(3);
        let m: PolyMatrix =
            Matrix::from_rows(vec![vec![c(0), a.clone()], vec![-a.clone(), c(0)]]).unwrap();
        assert_eq!(m.pfaffian().unwrap(), a);
        let j = q(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert_eq!(j.pfaffian().unwrap(), rat(1));
        // a12 a34 - a13 a24 + a14 a23 with a12..a34 = 2,3,5,7,11,13
        let g = q(&[
            &[0, 2, 3, 5],
            &[-2, 0, 7, 11],
            &[-3, -7, 0, 13],
            &[-5, -11, -13, 0],
        ]);
        assert_eq!(g.pfaffian().unwrap(), rat(2 * 13 - 3 * 11 + 5 * 7));
        assert_eq!(
            q(&[&[0, 1], &[1, 0]]).pfaffian(),
            Err(Error::NotAntisymmetric)
        );
        let odd: QMatrix = Matrix::zeros(3, 3);
        assert_eq!(odd.pfaffian(), Err(Error::OddDimension(3)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1], &[5, 3]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        let half: QMatrix = Matrix::from_fn(2, 2, |i, j| {
            if i == j {
                ratio(1, 2)
            } else {
                Rational::zero()
            }
        });
        assert_eq!(half.inverse().unwrap(), q(&[&[2, 0], &[0, 2]]));
    }
}
