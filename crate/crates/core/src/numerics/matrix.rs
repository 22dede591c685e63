use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, Num, Zero};

use crate::Real;

/// Matrix entry: a real scalar or a complex number over one.
pub trait Element: Copy + Num + Neg<Output = Self> + Debug + Send + Sync + 'static {
    type Real: Real;

    fn conj(self) -> Self;
    fn modulus(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
}

impl<T: Real> Element for T {
    type Real = T;
    fn conj(self) -> Self {
        self
    }
    fn modulus(self) -> T {
        self.abs()
    }
    fn from_real(r: T) -> Self {
        r
    }
}

impl<T: Real> Element for Complex<T> {
    type Real = T;
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn modulus(self) -> T {
        self.norm()
    }
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type RealMatrix<T> = Matrix<T>;
pub type ComplexMatrix<T> = Matrix<Complex<T>>;
pub type ComplexVector<T> = Vec<Complex<T>>;

impl<S: Element> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major data. Panics if the length does not match.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { S::zero() })
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

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    /// Conjugate transpose (plain transpose for real entries).
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map<R: Element>(&self, f: impl Fn(S) -> R) -> Matrix<R> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: S) -> Self {
        self.map(|v| v * s)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .fold(S::Real::zero(), |m, v| m.max(v.modulus()))
    }

    /// Largest entry modulus off the main diagonal.
    pub fn max_abs_off_diagonal(&self) -> S::Real {
        let mut m = S::Real::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].modulus());
                }
            }
        }
        m
    }

    /// `max |M - M^H|`.
    pub fn hermiticity_defect(&self) -> S::Real {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut m = S::Real::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                m = m.max((self[(i, j)] - self[(j, i)].conj()).modulus());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> S {
        self.diagonal().into_iter().fold(S::zero(), |a, b| a + b)
    }
}

impl<T: Real> Matrix<T> {
    /// Lifts a real matrix to a complex one.
    pub fn to_complex(&self) -> ComplexMatrix<T> {
        self.map(|v| Complex::new(v, T::zero()))
    }
}

impl<T: Real> Matrix<Complex<T>> {
    /// Entrywise real part.
    pub fn re(&self) -> RealMatrix<T> {
        self.map(|v| v.re)
    }

    /// Entrywise imaginary part.
    pub fn im(&self) -> RealMatrix<T> {
        self.map(|v| v.im)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Element> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] = out.data[i * rhs.cols + j] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<S: Element> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<S: Element> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

/// `max_ij |a_ij - b_ij|`.
pub fn max_abs_diff<S: Element>(a: &Matrix<S>, b: &Matrix<S>) -> S::Real {
    (a - b).max_abs()
}

/// `<a, b> = sum conj(a_i) b_i`.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
}
