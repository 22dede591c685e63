//! Krawtchouk polynomials `K_n(x; p, N)`, their binomial weight, the
//! renormalized (orthonormal) family and the zero-diagonal auxiliary family.

mod auxiliary;
mod exact;
mod table;

pub use auxiliary::{
    auxiliary_table, psi_roots, psi_table, running_product, zero_diagonal_roots, RootScaling,
};
pub use exact::ExactKrawtchouk;
pub use table::{
    difference_residual, difference_residual_max, orthogonality_gram, recurrence_agreement,
    recurrence_residual_max, recurrence_table, renormalization, renormalized_table, Family,
    PolynomialTable,
};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::{Error, Real, Result};

/// The pair `(p, N)` that fixes the whole model. The state space has
/// dimension `N + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<T> {
    p: T,
    n: usize,
}

impl<T: Real> OscillatorParams<T> {
    pub fn new(p: T, n: usize) -> Result<Self> {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::InvalidProbability(p.to_f64().unwrap_or(f64::NAN)));
        }
        if n < 1 {
            return Err(Error::InvalidLevel(n));
        }
        Ok(Self { p, n })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        T::one() - self.p
    }

    /// `N`, the highest level.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `N + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `p (1 - p)`.
    pub fn pq(&self) -> T {
        self.p * self.q()
    }

    /// Same `p`, different `N`.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.p, n)
    }

    /// The integer lattice `0, 1, ..., N` as scalars.
    pub fn lattice(&self) -> Vec<T> {
        (0..=self.n).map(T::of_usize).collect()
    }
}

/// Diagonal `a_n = p(N-n) + n(1-p)` and off-diagonal
/// `b_n = -sqrt(p(1-p)(n+1)(N-n))` of the symmetric Jacobi matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Real> RecurrenceCoefficients<T> {
    pub fn new(params: &OscillatorParams<T>) -> Self {
        let n = params.n();
        let (p, q) = (params.p(), params.q());
        let a = (0..=n)
            .map(|k| p * T::of_usize(n - k) + T::of_usize(k) * q)
            .collect();
        let b = (0..n)
            .map(|k| -(params.pq() * T::of_usize((k + 1) * (n - k))).sqrt())
            .collect();
        Self { a, b }
    }

    /// `b_k`, with the convention `b_{-1} = b_N = 0`.
    pub fn b_at(&self, k: isize) -> T {
        if k < 0 {
            T::zero()
        } else {
            self.b.get(k as usize).copied().unwrap_or_else(T::zero)
        }
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, `(a)_0 = 1`.
pub fn pochhammer<T: Real>(a: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (a + T::of_usize(i)))
}

/// `C_N^n`, exact and then rounded once.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::from(1u32);
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    T::of(c.to_f64().unwrap_or(f64::INFINITY))
}

/// Binomial weight `rho(n; p, N) = C_N^n p^n (1-p)^{N-n}`.
pub fn weight<T: Real>(n: usize, params: &OscillatorParams<T>) -> Result<T> {
    let top = params.n();
    if n > top {
        return Err(Error::DegreeTooLarge { degree: n, n: top });
    }
    Ok(binomial::<T>(top, n) * params.p().powi(n as i32) * params.q().powi((top - n) as i32))
}

/// `K_n(x; p, N)` from its terminating hypergeometric sum, evaluated exactly
/// and rounded once.
pub fn krawtchouk<T: Real>(n: usize, x: T, params: &OscillatorParams<T>) -> Result<T> {
    ExactKrawtchouk::new(params).eval(n, x)
}
