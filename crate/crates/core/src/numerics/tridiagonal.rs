use crate::numerics::RealMatrix;
use crate::{Error, Real, Result};

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    /// `offdiag` must have exactly one entry fewer than `diag`; every entry
    /// must be finite.
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Empty("tridiagonal diagonal"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len() - 1,
                actual: offdiag.len(),
            });
        }
        if let Some((i, v)) = diag.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(format!("diag[{i}] = {v}")));
        }
        if let Some((i, v)) = offdiag.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(format!("offdiag[{i}] = {v}")));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn to_dense(&self) -> RealMatrix<T> {
        let m = self.dim();
        RealMatrix::from_fn(m, m, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                T::zero()
            }
        })
    }

    /// `max |T|` over all stored entries.
    pub fn max_abs(&self) -> T {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns).
///
/// Column `k` of `eigenvectors` belongs to `eigenvalues[k]`. Its first
/// significant component (magnitude above `sqrt(eps)` times the column's
/// largest) is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: RealMatrix<T>,
}

impl<T: Real> SpectralData<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> Vec<T> {
        self.eigenvectors.column(k)
    }

    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> RealMatrix<T> {
        let v = &self.eigenvectors;
        let scaled =
            RealMatrix::from_fn(v.rows(), v.cols(), |i, k| v[(i, k)] * self.eigenvalues[k]);
        &scaled * &v.adjoint()
    }

    /// `max |V^T V - I|`.
    pub fn orthonormality_defect(&self) -> T {
        let v = &self.eigenvectors;
        let g = &v.adjoint() * v;
        (&g - &RealMatrix::identity(g.rows())).max_abs()
    }
}

/// Implicit QL with Wilkinson-type shifts (the EISPACK `tql2` scheme),
/// accumulating the rotations into the eigenvector matrix.
pub fn eigh_tridiagonal<T: Real>(t: &SymTridiagonal<T>) -> Result<SpectralData<T>> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(T::zero());
    let mut v = RealMatrix::<T>::identity(n);

    let eps = T::epsilon();
    let two = T::of(2.0);
    let max_iter = 30 * n.max(1);
    let mut f = T::zero();
    let mut tst1 = T::zero();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::NoConvergence(max_iter));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&k| d[k]).collect();
    let mut eigenvectors = RealMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    fix_signs(&mut eigenvectors);

    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

fn fix_signs<T: Real>(v: &mut RealMatrix<T>) {
    let n = v.rows();
    for k in 0..v.cols() {
        let largest = (0..n).fold(T::zero(), |m, i| m.max(v[(i, k)].abs()));
        let threshold = largest * T::epsilon().sqrt();
        if let Some(i) = (0..n).find(|&i| v[(i, k)].abs() > threshold) {
            if v[(i, k)] < T::zero() {
                for i in 0..n {
                    v[(i, k)] = -v[(i, k)];
                }
            }
        }
    }
}
