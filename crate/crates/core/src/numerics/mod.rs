//! Dense linear-algebra kernel: a small row-major matrix type, the implicit QL
//! eigensolver for real symmetric tridiagonal matrices, and the Hermitian
//! eigendecomposition / skew-Hermitian exponential built on top of it.

mod hermitian;
mod matrix;
mod tridiagonal;

pub use hermitian::{eigh_hermitian, expm_skew_hermitian, HermitianEigen};
pub use matrix::{
    inner, max_abs_diff, norm, ComplexMatrix, ComplexVector, Element, Matrix, RealMatrix,
};
pub use tridiagonal::{eigh_tridiagonal, SpectralData, SymTridiagonal};

/// Independent reference routines used only by tests.
#[cfg(test)]
pub(crate) mod oracle {
    use num_complex::Complex;

    use super::{ComplexMatrix, RealMatrix};

    /// Cyclic Jacobi rotations on a dense symmetric matrix; ascending eigenvalues.
    pub fn jacobi_eigenvalues(a: &RealMatrix<f64>) -> Vec<f64> {
        let n = a.rows();
        let mut a = a.clone();
        for _ in 0..100 {
            let off: f64 = a.max_abs_off_diagonal();
            if off < 1e-15 * a.max_abs().max(1e-300) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev = a.diagonal();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ev
    }

    /// Scaling-and-squaring Taylor series for `exp(G)`.
    pub fn expm_taylor(g: &ComplexMatrix<f64>) -> ComplexMatrix<f64> {
        let n = g.rows();
        let mut squarings = 0;
        let mut norm = g.max_abs() * n as f64;
        while norm > 0.25 {
            norm /= 2.0;
            squarings += 1;
        }
        let a = g.scale(Complex::new(0.5f64.powi(squarings), 0.0));
        let mut sum = ComplexMatrix::identity(n);
        let mut term = ComplexMatrix::identity(n);
        for k in 1..30 {
            term = (&term * &a).scale(Complex::new(1.0 / k as f64, 0.0));
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }
}
