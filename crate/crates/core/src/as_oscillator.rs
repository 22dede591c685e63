//! Difference-operator oscillator on the grid `xi_j = h(j - pN)`,
//! `h = sqrt(2Np(1-p))`, and its unitary equivalence with the Fock-basis
//! oscillator.

use num_complex::Complex;
use num_traits::Zero;

use crate::numerics::{eigh_tridiagonal, max_abs_diff, ComplexMatrix, RealMatrix, SymTridiagonal};
use crate::oscillator::{build_tilde_operators, OperatorMatrix};
use crate::polynomials::{renormalized_table, weight, OscillatorParams};
use crate::{Error, Real, Result};

/// Grid nodes `xi_j = h(j - pN)`, `j = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsGrid<T> {
    pub h: T,
    pub nodes: Vec<T>,
}

impl<T: Real> AsGrid<T> {
    pub fn new(params: &OscillatorParams<T>) -> Self {
        let h = (T::of(2.0) * T::of_usize(params.n()) * params.pq()).sqrt();
        let shift = params.p() * T::of_usize(params.n());
        let nodes = (0..params.dim())
            .map(|j| h * (T::of_usize(j) - shift))
            .collect();
        Self { h, nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `pN + xi/h`, the lattice index of a node.
    pub fn index_of(&self, xi: T, params: &OscillatorParams<T>) -> T {
        params.p() * T::of_usize(params.n()) + xi / self.h
    }
}

/// Complex values over the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    pub values: Vec<Complex<T>>,
}

impl<T: Real> GridFunction<T> {
    pub fn from_real(values: &[T]) -> Self {
        Self {
            values: values.iter().map(|&v| Complex::new(v, T::zero())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(op: &OperatorMatrix<T>, f: &Self) -> Self {
        Self {
            values: op.matrix().mul_vec(&f.values),
        }
    }
}

/// `alpha(xi) = sqrt((pN + xi/h + 1)((1-p)N - xi/h))`.
///
/// Radicands that are negative only by rounding are clamped to zero; a
/// genuinely negative radicand is an error.
pub fn alpha<T: Real>(params: &OscillatorParams<T>, xi: T) -> Result<T> {
    let grid_h = (T::of(2.0) * T::of_usize(params.n()) * params.pq()).sqrt();
    let big = T::of_usize(params.n());
    let s = xi / grid_h;
    let radicand = (params.p() * big + s + T::one()) * (params.q() * big - s);
    if !radicand.is_finite() {
        return Err(Error::NonFinite(format!("alpha radicand at xi = {xi}")));
    }
    if radicand < T::zero() {
        let slack = T::tol(1e-12) * (big + T::one()) * (big + T::one());
        if -radicand > slack {
            return Err(Error::NegativeRadicand {
                xi: xi.to_f64().unwrap_or(f64::NAN),
                radicand: radicand.to_f64().unwrap_or(f64::NAN),
            });
        }
        return Ok(T::zero());
    }
    Ok(radicand.sqrt())
}

fn alphas<T: Real>(params: &OscillatorParams<T>, grid: &AsGrid<T>) -> Result<Vec<T>> {
    let values = grid
        .nodes
        .iter()
        .map(|&xi| alpha(params, xi))
        .collect::<Result<Vec<_>>>()?;
    let top = values[values.len() - 1];
    let scale = T::of_usize(params.dim());
    if top > T::tol(1e-6) * scale {
        return Err(Error::NegativeRadicand {
            xi: grid.nodes[params.n()].to_f64().unwrap_or(f64::NAN),
            radicand: top.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(values)
}

/// `Psi_n(xi_j) = (-1)^n sqrt(C(N,n) (p/(1-p))^n rho(j)) K_n(j)` as a real
/// matrix with rows `n` and columns `j`.
pub fn krawtchouk_function_matrix<T: Real>(params: &OscillatorParams<T>) -> Result<RealMatrix<T>> {
    let table = renormalized_table(params, &params.lattice())?;
    let sqrt_w = (0..params.dim())
        .map(|j| weight(j, params).map(|w| w.sqrt()))
        .collect::<Result<Vec<T>>>()?;
    Ok(RealMatrix::from_fn(params.dim(), params.dim(), |n, j| {
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        sign * sqrt_w[j] * table.get(n, j)
    }))
}

/// The functions `Psi_0, ..., Psi_N`.
pub fn krawtchouk_functions<T: Real>(params: &OscillatorParams<T>) -> Result<Vec<GridFunction<T>>> {
    let m = krawtchouk_function_matrix(params)?;
    Ok((0..m.rows())
        .map(|n| GridFunction::from_real(m.row(n)))
        .collect())
}

fn h_as_tridiagonal<T: Real>(params: &OscillatorParams<T>) -> Result<SymTridiagonal<T>> {
    let grid = AsGrid::new(params);
    let al = alphas(params, &grid)?;
    let pq = params.pq();
    let c = T::of(2.0) * pq * T::of_usize(params.n()) + T::of(0.5);
    let slope = T::one() - T::of(2.0) * params.p();
    let diag = grid
        .nodes
        .iter()
        .map(|&xi| c + slope * xi / grid.h)
        .collect();
    let off = al[..params.n()].iter().map(|&a| -pq.sqrt() * a).collect();
    SymTridiagonal::new(diag, off)
}

/// `H_AS` in the delta basis of the grid.
pub fn build_h_as<T: Real>(params: &OscillatorParams<T>) -> Result<OperatorMatrix<T>> {
    OperatorMatrix::hermitian(h_as_tridiagonal(params)?.to_dense().to_complex())
}

/// `A+`, `A-` and `A0 = [A+, A-] / 2` on the grid.
#[derive(Debug, Clone)]
pub struct AsLadder<T> {
    pub raise: OperatorMatrix<T>,
    pub lower: OperatorMatrix<T>,
    pub zero: OperatorMatrix<T>,
}

/// `A+ = sqrt(p(1-p))((2p-1)N + 2xi/h) + (1-p) e^{-h d} alpha(xi) - p alpha(xi) e^{h d}`
/// where `e^{-h d} alpha` multiplies first and then shifts down;
/// `A- = (A+)^T`.
pub fn build_as_ladder<T: Real>(params: &OscillatorParams<T>) -> Result<AsLadder<T>> {
    let grid = AsGrid::new(params);
    let al = alphas(params, &grid)?;
    let (p, q) = (params.p(), params.q());
    let big = T::of_usize(params.n());
    let sq = params.pq().sqrt();
    let dim = params.dim();
    let raise = RealMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            sq * ((T::of(2.0) * p - T::one()) * big + T::of(2.0) * grid.nodes[i] / grid.h)
        } else if i == j + 1 {
            q * al[j]
        } else if j == i + 1 {
            -p * al[i]
        } else {
            T::zero()
        }
    })
    .to_complex();
    let lower = raise.adjoint();
    let zero = raise
        .commutator(&lower)
        .scale(Complex::new(T::of(0.5), T::zero()));
    Ok(AsLadder {
        raise: OperatorMatrix::general(raise),
        lower: OperatorMatrix::general(lower),
        zero: OperatorMatrix::hermitian(zero)?,
    })
}

/// Unitary `T` with `T e_n = Psi_n`, built from the eigenvectors of `H_AS`.
/// Column `n` is the eigenvector for `n + 1/2`, signed so that its overlap
/// with `Psi_n` is positive.
pub fn build_intertwiner<T: Real>(params: &OscillatorParams<T>) -> Result<OperatorMatrix<T>> {
    let spectral = eigh_tridiagonal(&h_as_tridiagonal(params)?)?;
    let psi = krawtchouk_function_matrix(params)?;
    let dim = params.dim();
    let signs: Vec<T> = (0..dim)
        .map(|n| {
            let overlap = (0..dim).fold(T::zero(), |s, j| {
                s + psi[(n, j)] * spectral.eigenvectors[(j, n)]
            });
            if overlap < T::zero() {
                -T::one()
            } else {
                T::one()
            }
        })
        .collect();
    let t = RealMatrix::from_fn(dim, dim, |j, n| signs[n] * spectral.eigenvectors[(j, n)]);
    Ok(OperatorMatrix::general(t.to_complex()))
}

/// Residuals of the unitary equivalence and of
/// `H~ = -(H~_AS - 1/2)^2 + N H~_AS` with `H~_AS = T^-1 H_AS T`.
#[derive(Debug, Clone)]
pub struct RelationCheck<T> {
    /// `max |T^H T - I|`.
    pub unitarity: T,
    /// `max |T e_n - Psi_n|`.
    pub intertwining: T,
    /// `max |H~_AS - diag(n + 1/2)|`.
    pub diagonal: T,
    /// `max_n |N(n + 1/2) - n^2 - (-(n)^2 + N(n + 1/2))|` using the computed
    /// diagonal of `H~_AS`.
    pub scalar: T,
    /// `max |H~ + (H~_AS - I/2)^2 - N H~_AS|`.
    pub matrix: T,
}

impl<T: Real> RelationCheck<T> {
    pub fn max_residual(&self) -> T {
        [
            self.unitarity,
            self.intertwining,
            self.diagonal,
            self.scalar,
            self.matrix,
        ]
        .into_iter()
        .fold(T::zero(), |m, v| m.max(v))
    }
}

pub fn relation_check<T: Real>(params: &OscillatorParams<T>) -> Result<RelationCheck<T>> {
    let t = build_intertwiner(params)?;
    let h_as = build_h_as(params)?;
    let tm = t.matrix();
    let dim = params.dim();
    let eye = ComplexMatrix::identity(dim);
    let unitarity = max_abs_diff(&(&tm.adjoint() * tm), &eye);
    let psi = krawtchouk_function_matrix(params)?;
    let intertwining = max_abs_diff(tm, &psi.adjoint().to_complex());
    let rotated = &(&tm.adjoint() * h_as.matrix()) * tm;
    let half = Complex::new(T::of(0.5), T::zero());
    let levels = ComplexMatrix::from_diagonal(
        &(0..dim)
            .map(|n| Complex::new(T::of_usize(n), T::zero()) + half)
            .collect::<Vec<_>>(),
    );
    let diagonal = max_abs_diff(&rotated, &levels);

    let big = T::of_usize(params.n());
    let scalar = rotated
        .diagonal()
        .iter()
        .enumerate()
        .fold(T::zero(), |m, (n, e)| {
            let n_t = T::of_usize(n);
            let lhs = big * (n_t + T::of(0.5)) - n_t * n_t;
            let shifted = e.re - T::of(0.5);
            m.max((lhs - (-(shifted * shifted) + big * e.re)).abs())
        });

    let h = build_tilde_operators(params)?.h;
    let shifted = &rotated - &eye.scale(half);
    let rhs = &(&shifted * &shifted).scale(-Complex::new(T::one(), T::zero()))
        + &rotated.scale(Complex::new(big, T::zero()));
    let matrix = max_abs_diff(h.matrix(), &rhs);
    Ok(RelationCheck {
        unitarity,
        intertwining,
        diagonal,
        scalar,
        matrix,
    })
}

/// `max |Psi M Psi^T - D|` for a grid operator `M` that should act as
/// `M Psi_n = d_n Psi_n`; a helper for action checks.
pub fn psi_basis_defect<T: Real>(
    params: &OscillatorParams<T>,
    op: &OperatorMatrix<T>,
    expected: &ComplexMatrix<T>,
) -> Result<T> {
    let psi = krawtchouk_function_matrix(params)?.to_complex();
    let m = &(&psi * op.matrix()) * &psi.adjoint();
    Ok(max_abs_diff(&m, expected))
}

/// `sqrt((n+1)(N-n))` on the first subdiagonal, the matrix of `A+` in the
/// `Psi` basis.
pub fn raising_in_psi_basis<T: Real>(params: &OscillatorParams<T>) -> ComplexMatrix<T> {
    let top = params.n();
    let dim = params.dim();
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j + 1 {
            Complex::new(T::of_usize((j + 1) * (top - j)).sqrt(), T::zero())
        } else {
            Complex::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eigh_hermitian;

    fn params(p: f64, n: usize) -> OscillatorParams<f64> {
        OscillatorParams::new(p, n).unwrap()
    }

    #[test]
    fn grid() {
        let pr = params(0.3, 10);
        let g = AsGrid::new(&pr);
        assert!((g.h - (2.0f64 * 10.0 * 0.21).sqrt()).abs() < 1e-15);
        for (j, &xi) in g.nodes.iter().enumerate() {
            assert!((g.index_of(xi, &pr) - j as f64).abs() < 1e-12);
        }
        for w in g.nodes.windows(2) {
            assert!((w[1] - w[0] - g.h).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_values() {
        let pr = params(0.3, 6);
        let g = AsGrid::new(&pr);
        for j in 0..=6 {
            let a = alpha(&pr, g.nodes[j]).unwrap();
            assert!((a - (((j + 1) * (6 - j)) as f64).sqrt()).abs() < 1e-12);
        }
        assert!(alpha(&pr, g.nodes[6] + 3.0 * g.h).is_err());
    }

    #[test]
    fn functions_orthonormal() {
        for (p, n) in [(0.1, 5), (0.5, 8), (0.73, 30), (0.3, 64)] {
            let pr = params(p, n);
            let m = krawtchouk_function_matrix(&pr).unwrap();
            let eye = RealMatrix::identity(pr.dim());
            assert!(max_abs_diff(&(&m * &m.adjoint()), &eye) < 1e-10);
            assert!(max_abs_diff(&(&m.adjoint() * &m), &eye) < 1e-10);
            for j in 0..pr.dim() {
                assert!((m[(0, j)] - weight(j, &pr).unwrap().sqrt()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn h_as_spectrum() {
        for (p, n) in [(0.5, 1), (0.2, 7), (0.9, 20)] {
            let pr = params(p, n);
            let h = build_h_as(&pr).unwrap();
            assert!(h.matrix().hermiticity_defect() < 1e-11);
            let e = eigh_hermitian(h.matrix()).unwrap();
            for (k, v) in e.eigenvalues.iter().enumerate() {
                assert!((v - (k as f64 + 0.5)).abs() < 1e-9);
            }
            let psi = krawtchouk_functions(&pr).unwrap();
            for (n, f) in psi.iter().enumerate() {
                let hf = GridFunction::apply(&h, f);
                for (a, b) in hf.values.iter().zip(&f.values) {
                    assert!((a - b * (n as f64 + 0.5)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn ladder_actions() {
        for (p, n) in [(0.5, 2), (0.3, 9), (0.85, 33)] {
            let pr = params(p, n);
            let l = build_as_ladder(&pr).unwrap();
            let up = raising_in_psi_basis(&pr);
            assert!(psi_basis_defect(&pr, &l.raise, &up).unwrap() < 1e-9);
            assert!(psi_basis_defect(&pr, &l.lower, &up.adjoint()).unwrap() < 1e-9);
            let psi0 = &krawtchouk_functions(&pr).unwrap()[0];
            assert!(GridFunction::apply(&l.lower, psi0)
                .values
                .iter()
                .all(|c| c.norm() < 1e-12));
            let a0 = ComplexMatrix::from_diagonal(
                &(0..pr.dim())
                    .map(|k| Complex::new(k as f64 - n as f64 / 2.0, 0.0))
                    .collect::<Vec<_>>(),
            );
            assert!(psi_basis_defect(&pr, &l.zero, &a0).unwrap() < 1e-10);
        }
    }

    #[test]
    fn so3_and_factorization() {
        let pr = params(0.4, 12);
        let l = build_as_ladder(&pr).unwrap();
        let (r, lo, z) = (l.raise.matrix(), l.lower.matrix(), l.zero.matrix());
        assert!(max_abs_diff(&z.commutator(r), r) < 1e-10);
        assert!(max_abs_diff(&z.commutator(lo), &lo.scale(Complex::new(-1.0, 0.0))) < 1e-10);
        let h = build_h_as(&pr).unwrap();
        let shift = ComplexMatrix::identity(pr.dim()).scale(Complex::new(6.5, 0.0));
        assert!(max_abs_diff(h.matrix(), &(z + &shift)) < 1e-10);
    }

    #[test]
    fn intertwiner_and_relation() {
        for (p, n) in [(0.5, 1), (0.5, 4), (0.1, 16), (0.7, 40)] {
            let pr = params(p, n);
            let c = relation_check(&pr).unwrap();
            assert!(c.unitarity < 1e-10, "{c:?}");
            assert!(c.intertwining < 1e-9, "{c:?}");
            assert!(c.diagonal < 1e-9, "{c:?}");
            assert!(c.scalar < 1e-8 && c.matrix < 1e-8, "{c:?}");
        }
    }
}
