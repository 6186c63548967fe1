//! Dense exact matrices over ℤ and ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn column(v: Vec<T>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    /// Sub-matrix with the given row and column deleted.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

impl<T: Clone + Zero + One + PartialEq> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = &self[(i, j)];
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Matrix product; dimensions must agree.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    let slot = &mut out[(i, j)];
                    *slot = std::mem::replace(slot, T::zero()) + &prod;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · g · self`, the congruence transform of a Gram matrix.
    pub fn congruence(&self, g: &Self) -> Result<Self> {
        self.transpose().try_mul(&g.try_mul(self)?)
    }

    /// Bilinear value `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..self.cols {
                row = row + &(&self[(i, j)] * &y[j]);
            }
            acc = acc + &(&x[i] * &row);
        }
        acc
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + &(a * b))
            })
            .collect()
    }
}

impl<T> Mul for &Matrix<T>
where
    T: Clone + Zero + for<'b> Add<&'b T, Output = T>,
    for<'b> &'b T: Mul<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<T> Add for &Matrix<T>
where
    T: Clone,
    for<'b> &'b T: Add<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T> Sub for &Matrix<T>
where
    T: Clone,
    for<'b> &'b T: Sub<&'b T, Output = T>,
{
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T> Neg for &Matrix<T>
where
    T: Clone,
    for<'b> &'b T: Neg<Output = T>,
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl<T: Clone> Matrix<T>
where
    for<'b> &'b T: Mul<&'b T, Output = T>,
{
    pub fn scale(&self, s: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| s * a).collect() }
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Serialized as a list of rows of decimal strings.
impl<T: fmt::Display> serde::Serialize for Matrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_exact(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if sign { -d } else { d })
    }

    /// Classical adjoint: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(IntMatrix::identity(1));
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det_exact()?;
                out[(i, j)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        Ok(out)
    }

    /// Positive definiteness via the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            let lead = Matrix::from_fn(k, k, |i, j| self[(i, j)].clone());
            lead.det_exact().map(|d| d.is_positive()).unwrap_or(false)
        })
    }

    /// Inverse of a unimodular matrix, as an integer matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        to_integer_matrix(&inv).ok_or_else(|| Error::NotUnimodular(format!("{self:?}")))
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det_exact().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl RatMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_i64(rows).to_rational()
    }

    /// Determinant by Gaussian elimination over ℚ.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != k {
                m.swap_rows(k, p);
                det = -det;
            }
            let piv = m[(k, k)].clone();
            det *= &piv;
            for i in k + 1..n {
                let f = &m[(i, k)] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = &m[(i, j)] - &f * &m[(k, j)];
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let piv = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = &a[(k, j)] / &piv;
                inv[(k, j)] = &inv[(k, j)] / &piv;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let va = &a[(i, j)] - &f * &a[(k, j)];
                    a[(i, j)] = va;
                    let vi = &inv[(i, j)] - &f * &inv[(k, j)];
                    inv[(i, j)] = vi;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        self.inverse()?.try_mul(rhs)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }
}

/// Converts a rational matrix with integer entries; `None` if any entry is fractional.
pub fn to_integer_matrix(m: &RatMatrix) -> Option<IntMatrix> {
    m.is_integral().then(|| m.map(|x| x.to_integer()))
}

/// Converts a rational vector with integer entries.
pub fn to_integer_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().all(|x| x.is_integer()).then(|| v.iter().map(|x| x.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::identity(3).det_exact().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[&[2, 0], &[0, 4]]).det_exact().unwrap(), BigInt::from(8));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det_exact().unwrap(), BigInt::from(-1));
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).det_exact().unwrap(),
            BigInt::zero()
        );
        assert!(matches!(IntMatrix::zeros(2, 3).det_exact(), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn adjugate_examples() {
        let d = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(d.adjugate().unwrap(), IntMatrix::from_i64(&[&[6, 0, 0], &[0, 3, 0], &[0, 0, 2]]));
        assert_eq!(IntMatrix::identity(3).adjugate().unwrap(), IntMatrix::identity(3));
        assert!(IntMatrix::zeros(3, 3).adjugate().unwrap().is_zero());
        assert!(IntMatrix::zeros(2, 1).adjugate().is_err());
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn positive_definite() {
        assert!(IntMatrix::from_i64(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!IntMatrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!IntMatrix::from_i64(&[&[1, 0], &[1, 1]]).is_positive_definite());
    }
}
