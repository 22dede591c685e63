//! The oscillator in the Fock basis `|n> = K~_n`: coordinate and momentum,
//! their "tilde" combinations, the quadratic Hamiltonian and the ladder
//! operators.

use num_complex::Complex;
use num_traits::Zero;

use crate::numerics::{eigh_hermitian, inner, norm, ComplexMatrix, ComplexVector, RealMatrix};
use crate::polynomials::{OscillatorParams, RecurrenceCoefficients};
use crate::{Error, Real, Result};

/// State vector in the Fock basis; component `n` is `<n|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T>(ComplexVector<T>);

impl<T: Real> FockVector<T> {
    pub fn new(amplitudes: ComplexVector<T>) -> Self {
        Self(amplitudes)
    }

    /// `|n>` in a space of dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Self {
        let mut v = vec![Complex::zero(); dim];
        v[n] = Complex::new(T::one(), T::zero());
        Self(v)
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.0
    }

    pub fn into_amplitudes(self) -> ComplexVector<T> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> T {
        norm(&self.0)
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > T::zero() {
            for c in &mut self.0 {
                *c = *c / n;
            }
        }
        self
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(inner(&self.0, &other.0))
    }

    /// `|c_n|^2`.
    pub fn probabilities(&self) -> Vec<T> {
        self.0.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Dense `(N+1) x (N+1)` operator, tagged Hermitian when it was checked to be.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    matrix: ComplexMatrix<T>,
    hermitian: bool,
}

impl<T: Real> OperatorMatrix<T> {
    /// Accepts `m` only if `max |M - M^H| < 1e-12 max(1, max |M|)`.
    pub fn hermitian(m: ComplexMatrix<T>) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect >= T::tol(1e-12) * m.max_abs().max(T::one()) {
            return Err(Error::NotHermitian {
                deviation: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            matrix: m,
            hermitian: true,
        })
    }

    pub fn general(m: ComplexMatrix<T>) -> Self {
        Self {
            matrix: m,
            hermitian: false,
        }
    }

    pub fn from_real(m: &RealMatrix<T>) -> Self {
        Self::general(m.to_complex())
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &FockVector<T>) -> FockVector<T> {
        FockVector(self.matrix.mul_vec(v.amplitudes()))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            hermitian: self.hermitian,
        }
    }
}

fn real<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

fn tridiagonal<T: Real>(
    dim: usize,
    lower: impl Fn(usize) -> Complex<T>,
    diag: impl Fn(usize) -> Complex<T>,
    upper: impl Fn(usize) -> Complex<T>,
) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            diag(i)
        } else if i == j + 1 {
            lower(j)
        } else if j == i + 1 {
            upper(i)
        } else {
            Complex::zero()
        }
    })
}

/// `X` and `P`: `X|n> = b_n|n+1> + a_n|n> + b_{n-1}|n-1>`,
/// `P|n> = -i b_n|n+1> + a_n|n> + i b_{n-1}|n-1>`.
pub fn build_xp<T: Real>(
    params: &OscillatorParams<T>,
) -> Result<(OperatorMatrix<T>, OperatorMatrix<T>)> {
    let rc = RecurrenceCoefficients::new(params);
    let dim = params.dim();
    let x = tridiagonal(dim, |n| real(rc.b[n]), |n| real(rc.a[n]), |n| real(rc.b[n]));
    let p = tridiagonal(
        dim,
        |n| Complex::new(T::zero(), -rc.b[n]),
        |n| real(rc.a[n]),
        |n| Complex::new(T::zero(), rc.b[n]),
    );
    Ok((OperatorMatrix::hermitian(x)?, OperatorMatrix::hermitian(p)?))
}

/// `X~ = Re(X - P)`, `P~ = -i Im(X - P)` (entrywise) and
/// `H~ = (X~^2 + P~^2) / (4p(1-p))`.
#[derive(Debug, Clone)]
pub struct TildeOperators<T> {
    pub x: OperatorMatrix<T>,
    pub p: OperatorMatrix<T>,
    pub h: OperatorMatrix<T>,
}

pub fn build_tilde_operators<T: Real>(params: &OscillatorParams<T>) -> Result<TildeOperators<T>> {
    let (x, p) = build_xp(params)?;
    let diff = x.matrix() - p.matrix();
    let xt = diff.re().to_complex();
    let pt = diff
        .im()
        .to_complex()
        .scale(Complex::new(T::zero(), -T::one()));
    let sum = &(&xt * &xt) + &(&pt * &pt);
    let h = sum.scale(real(T::one() / (T::of(4.0) * params.pq())));
    Ok(TildeOperators {
        x: OperatorMatrix::hermitian(xt)?,
        p: OperatorMatrix::hermitian(pt)?,
        h: OperatorMatrix::hermitian(h)?,
    })
}

/// Creation `a+`, annihilation `a-` and number operator.
#[derive(Debug, Clone)]
pub struct Ladder<T> {
    pub raise: OperatorMatrix<T>,
    pub lower: OperatorMatrix<T>,
    pub number: OperatorMatrix<T>,
}

/// `a-|n> = -sqrt(n(N-n+1))|n-1>`, `a+|n> = -sqrt((n+1)(N-n))|n+1>`,
/// `N|n> = n|n>`. No dependence on `p`.
pub fn build_ladder<T: Real>(params: &OscillatorParams<T>) -> Result<Ladder<T>> {
    let top = params.n();
    let dim = params.dim();
    let step = |n: usize| -T::of_usize((n + 1) * (top - n)).sqrt();
    let raise = tridiagonal(
        dim,
        |n| real(step(n)),
        |_| Complex::zero(),
        |_| Complex::zero(),
    );
    let lower = raise.adjoint();
    let number =
        ComplexMatrix::from_diagonal(&(0..dim).map(|n| real(T::of_usize(n))).collect::<Vec<_>>());
    Ok(Ladder {
        raise: OperatorMatrix::general(raise),
        lower: OperatorMatrix::general(lower),
        number: OperatorMatrix::hermitian(number)?,
    })
}

/// `(X~ + i P~) / (2 sqrt(p(1-p)))` and `(X~ - i P~) / (2 sqrt(p(1-p)))`.
pub fn ladder_from_quadratures<T: Real>(
    params: &OscillatorParams<T>,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    let t = build_tilde_operators(params)?;
    let ip = t.p.matrix().scale(Complex::i());
    let s = real(T::one() / (T::of(2.0) * params.pq().sqrt()));
    Ok(((t.x.matrix() + &ip).scale(s), (t.x.matrix() - &ip).scale(s)))
}

/// `(a+ a- + a- a+) / 2`.
pub fn symmetrized_ladder_hamiltonian<T: Real>(ladder: &Ladder<T>) -> ComplexMatrix<T> {
    let (r, l) = (ladder.raise.matrix(), ladder.lower.matrix());
    (&(r * l) + &(l * r)).scale(real(T::of(0.5)))
}

/// `lambda_n = N(n + 1/2) - n^2`, indexed by `n`.
pub fn spectrum_formula<T: Real>(params: &OscillatorParams<T>) -> Vec<T> {
    let big = T::of_usize(params.n());
    (0..params.dim())
        .map(|n| {
            let n = T::of_usize(n);
            big * (n + T::of(0.5)) - n * n
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SpectrumCheck<T> {
    /// Eigenvalues of the `H~` matrix; entry `n` belongs to the eigenvector
    /// concentrated on `|n>`.
    pub computed: Vec<T>,
    /// `N(n + 1/2) - n^2`.
    pub formula: Vec<T>,
    /// Distance between the two as sorted multisets.
    pub max_deviation: T,
}

pub fn spectrum_check<T: Real>(params: &OscillatorParams<T>) -> Result<SpectrumCheck<T>> {
    let t = build_tilde_operators(params)?;
    let eig = eigh_hermitian(t.h.matrix())?;
    let dim = params.dim();
    let mut computed = vec![T::nan(); dim];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let n = (0..dim)
            .max_by(|&i, &j| {
                eig.eigenvectors[(i, k)]
                    .norm()
                    .partial_cmp(&eig.eigenvectors[(j, k)].norm())
                    .expect("finite")
            })
            .expect("non-empty");
        computed[n] = lambda;
    }
    if computed.iter().any(|v| v.is_nan()) {
        // two eigenvectors peaked on the same level: fall back to the sorted order
        computed = eig.eigenvalues.clone();
    }
    let formula = spectrum_formula(params);
    let mut a = eig.eigenvalues;
    let mut b = formula.clone();
    a.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    b.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    let max_deviation = a
        .iter()
        .zip(&b)
        .fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()));
    Ok(SpectrumCheck {
        computed,
        formula,
        max_deviation,
    })
}

#[derive(Debug, Clone)]
pub struct CommutatorCheck<T> {
    /// Diagonal of `[a-, a+]`.
    pub diagonal: Vec<T>,
    pub off_diagonal_max: T,
    /// `max_n |diag_n - (N - 2n)|`.
    pub deviation: T,
    /// `max_n |diag_n - ((N - 1) - 2n)|`, against the off-by-one constant;
    /// always 1.
    pub shifted_deviation: T,
}

pub fn commutator_check<T: Real>(params: &OscillatorParams<T>) -> Result<CommutatorCheck<T>> {
    let l = build_ladder(params)?;
    let c = l.lower.matrix().commutator(l.raise.matrix());
    let diag_c = c.diagonal();
    let diagonal: Vec<T> = diag_c.iter().map(|v| v.re).collect();
    let big = T::of_usize(params.n());
    let mut deviation = diag_c.iter().fold(T::zero(), |m, v| m.max(v.im.abs()));
    let mut shifted_deviation = T::zero();
    for (n, &d) in diagonal.iter().enumerate() {
        let two_n = T::of_usize(2 * n);
        deviation = deviation.max((d - (big - two_n)).abs());
        shifted_deviation = shifted_deviation.max((d - (big - T::one() - two_n)).abs());
    }
    Ok(CommutatorCheck {
        diagonal,
        off_diagonal_max: c.max_abs_off_diagonal(),
        deviation,
        shifted_deviation,
    })
}
