use crate::numerics::{eigh_tridiagonal, RealMatrix, SpectralData, SymTridiagonal};
use crate::polynomials::{Family, OscillatorParams, PolynomialTable, RecurrenceCoefficients};
use crate::{Error, Real, Result};

/// `K~^(0)_n(x)` for `n = 0..=max_degree`: `K~^(0)_0 = 1` and
/// `x K~^(0)_n = b_n K~^(0)_{n+1} + b_{n-1} K~^(0)_{n-1}`.
///
/// Degree `N + 1` would need division by `b_N = 0`; it is available in monic
/// form from [`psi_table`].
pub fn auxiliary_table<T: Real>(
    params: &OscillatorParams<T>,
    eval_set: &[T],
    max_degree: usize,
) -> Result<PolynomialTable<T>> {
    if max_degree > params.n() {
        return Err(Error::RecurrenceBreakdown {
            degree: max_degree,
            index: params.n(),
        });
    }
    if let Some(v) = eval_set.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("evaluation point {v}")));
    }
    let b = RecurrenceCoefficients::new(params).b;
    let mut values = RealMatrix::zeros(max_degree + 1, eval_set.len());
    for (j, &x) in eval_set.iter().enumerate() {
        values[(0, j)] = T::one();
        for n in 0..max_degree {
            let prev = if n > 0 {
                b[n - 1] * values[(n - 1, j)]
            } else {
                T::zero()
            };
            values[(n + 1, j)] = (x * values[(n, j)] - prev) / b[n];
        }
    }
    Ok(PolynomialTable {
        family: Family::Auxiliary,
        points: eval_set.to_vec(),
        values,
    })
}

/// `prod_{k<l} sqrt(2) b_k`, the factor relating `psi~_l` and `K~^(0)_l`;
/// empty product at `l = 0`.
pub fn running_product<T: Real>(params: &OscillatorParams<T>, l: usize) -> T {
    let rc = RecurrenceCoefficients::new(params);
    let s2 = T::SQRT_2();
    (0..l).fold(T::one(), |acc, k| acc * s2 * rc.b_at(k as isize))
}

/// Monic `psi~_n(y)`, `n = 0..=N+1`, defined by
/// `psi~_n(x sqrt 2) = prod_{k<n}(sqrt(2) b_k) K~^(0)_n(x)`. Equivalently
/// `psi~_{n+1}(y) = y psi~_n(y) - 2 b_{n-1}^2 psi~_{n-1}(y)`, which reaches
/// degree `N + 1` without dividing by `b_N`.
pub fn psi_table<T: Real>(
    params: &OscillatorParams<T>,
    eval_set: &[T],
) -> Result<PolynomialTable<T>> {
    if let Some(v) = eval_set.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("evaluation point {v}")));
    }
    let rc = RecurrenceCoefficients::new(params);
    let top = params.n() + 1;
    let two = T::of(2.0);
    let mut values = RealMatrix::zeros(top + 1, eval_set.len());
    for (j, &y) in eval_set.iter().enumerate() {
        values[(0, j)] = T::one();
        values[(1, j)] = y;
        for n in 1..top {
            values[(n + 1, j)] =
                y * values[(n, j)] - two * rc.b[n - 1].powi(2) * values[(n - 1, j)];
        }
    }
    Ok(PolynomialTable {
        family: Family::Psi,
        points: eval_set.to_vec(),
        values,
    })
}

/// Which zero-diagonal Jacobi matrix the roots come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootScaling {
    /// Off-diagonal `b_n`: the zeros `x_k` of the degree-`N+1` auxiliary
    /// polynomial.
    Jacobi,
    /// Off-diagonal `sqrt(2) b_n`: the zeros `x_k sqrt 2` of `psi~_{N+1}`.
    Psi,
}

impl RootScaling {
    pub fn factor<T: Real>(self) -> T {
        match self {
            RootScaling::Jacobi => T::one(),
            RootScaling::Psi => T::SQRT_2(),
        }
    }
}

/// Eigen-decomposition of the `(N+1) x (N+1)` zero-diagonal Jacobi matrix.
/// Eigenvector `k` has components proportional to `K~^(0)_l(x_k)`.
pub fn zero_diagonal_roots<T: Real>(
    params: &OscillatorParams<T>,
    scaling: RootScaling,
) -> Result<SpectralData<T>> {
    let s = scaling.factor::<T>();
    let b = RecurrenceCoefficients::new(params).b;
    let t = SymTridiagonal::new(
        vec![T::zero(); params.dim()],
        b.into_iter().map(|v| v * s).collect(),
    )?;
    eigh_tridiagonal(&t)
}

/// The `N + 1` roots of `psi~_{N+1}` with their eigenvectors.
pub fn psi_roots<T: Real>(params: &OscillatorParams<T>) -> Result<SpectralData<T>> {
    zero_diagonal_roots(params, RootScaling::Psi)
}
