use num_complex::Complex;
use num_traits::{One, Zero};

use crate::numerics::{eigh_tridiagonal, ComplexMatrix, SymTridiagonal};
use crate::{Error, Real, Result};

/// Eigendecomposition `H = U diag(eigenvalues) U^H` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: ComplexMatrix<T>,
}

/// Householder reduction to Hermitian tridiagonal form, a diagonal phase
/// change to make the off-diagonal real, then the tridiagonal QL solver.
pub fn eigh_hermitian<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            actual: h.cols(),
        });
    }
    let n = h.rows();
    if n == 0 {
        return Err(Error::Empty("hermitian matrix"));
    }
    if let Some(v) = h
        .as_slice()
        .iter()
        .find(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFinite(format!("matrix entry {v}")));
    }
    let defect = h.hermiticity_defect();
    if defect > T::tol(1e-10) * h.max_abs().max(T::one()) {
        return Err(Error::NotHermitian {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut a = h.clone();
    let mut q = ComplexMatrix::<T>::identity(n);
    let two = T::of(2.0);

    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let tail = x[1..].iter().map(|v| v.norm_sqr()).sum::<T>();
        if tail == T::zero() {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() > T::zero() {
            x[0] / x[0].norm()
        } else {
            Complex::one()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        for c in &mut v {
            *c = *c / vnorm;
        }

        // A <- H A with H = I - 2 v v^H acting on rows k+1..n
        for j in 0..n {
            let s = (0..v.len()).fold(Complex::zero(), |acc, r| {
                acc + v[r].conj() * a[(k + 1 + r, j)]
            });
            for r in 0..v.len() {
                a[(k + 1 + r, j)] = a[(k + 1 + r, j)] - v[r] * s * two;
            }
        }
        // A <- A H and Q <- Q H on columns k+1..n
        for m in [&mut a, &mut q] {
            for i in 0..n {
                let s: Complex<T> =
                    (0..v.len()).fold(Complex::zero(), |acc, c| acc + m[(i, k + 1 + c)] * v[c]);
                for c in 0..v.len() {
                    m[(i, k + 1 + c)] = m[(i, k + 1 + c)] - s * v[c].conj() * two;
                }
            }
        }
    }

    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    let mut phases = vec![Complex::<T>::one(); n];
    for i in 0..n.saturating_sub(1) {
        let t = a[(i + 1, i)];
        let r = t.norm();
        off.push(r);
        phases[i + 1] = if r > T::zero() {
            phases[i] * (t / r)
        } else {
            phases[i]
        };
    }

    let spectral = eigh_tridiagonal(&SymTridiagonal::new(diag, off)?)?;
    let v = &spectral.eigenvectors;
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| {
        (0..n).fold(Complex::zero(), |acc, j| {
            acc + q[(i, j)] * phases[j] * v[(j, k)]
        })
    });
    Ok(HermitianEigen {
        eigenvalues: spectral.eigenvalues,
        eigenvectors,
    })
}

/// `exp(G)` for skew-Hermitian `G`, through the spectral decomposition of the
/// Hermitian matrix `iG`: `exp(G) = U diag(exp(-i lambda)) U^H`.
pub fn expm_skew_hermitian<T: Real>(g: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            actual: g.cols(),
        });
    }
    let defect = (g + &g.adjoint()).max_abs();
    if defect > T::tol(1e-10) * g.max_abs() {
        return Err(Error::NotSkewHermitian {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = g.rows();
    if g.max_abs() == T::zero() {
        return Ok(ComplexMatrix::identity(n));
    }
    let mut h = g.scale(Complex::i());
    // symmetrize away rounding so the Hermitian check downstream is exact
    for i in 0..n {
        h[(i, i)] = Complex::new(h[(i, i)].re, T::zero());
        for j in i + 1..n {
            let avg = (h[(i, j)] + h[(j, i)].conj()) / T::of(2.0);
            h[(i, j)] = avg;
            h[(j, i)] = avg.conj();
        }
    }
    let eig = eigh_hermitian(&h)?;
    let u = &eig.eigenvectors;
    let phases: Vec<Complex<T>> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex::new(T::zero(), -l).exp())
        .collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).fold(Complex::zero(), |acc, k| {
            acc + u[(i, k)] * phases[k] * u[(j, k)].conj()
        })
    }))
}
