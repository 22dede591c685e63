//! The explicit root-sum form of the coherent state:
//!
//! `c_l ~ (-i z/|z|)^l / prod_{k<l}(sqrt(2) b_k) * sum_k W_k psi~_l(y_k) e^{i |z| s x_k}`
//!
//! with `x_k` the zeros of the degree-`N+1` auxiliary polynomial. Which root
//! set, phase scale `s` and weights `W_k` reproduce the displacement state is
//! decided once per evaluator by matching the hand-computed one- and
//! two-level states.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use super::{aligned_distance, CoherentFamily, CoherentLabel, CoherentState};
use crate::numerics::RealMatrix;
use crate::oscillator::FockVector;
use crate::polynomials::{zero_diagonal_roots, OscillatorParams, RootScaling};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseScale {
    /// `e^{i |z| x_k}`.
    Unit,
    /// `e^{i |z| x_k / sqrt(p(1-p))}`.
    InverseSqrtPq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRule {
    /// Christoffel numbers: squared first components of the eigenvectors.
    Christoffel,
    /// `1 / K~^(0)_N(x_k)^2`.
    InverseSquareTop,
}

/// The winning combination and how well it reproduced the reference states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub roots: RootScaling,
    pub phase: PhaseScale,
    pub weights: WeightRule,
    /// Worst aligned distance to the reference states.
    pub residual: f64,
    /// Best aligned distance among the rejected combinations.
    pub runner_up: f64,
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots = match self.roots {
            RootScaling::Jacobi => "zeros of K~(0)_{N+1} (off-diagonal b_n)",
            RootScaling::Psi => "zeros of psi~_{N+1} (off-diagonal sqrt2 b_n)",
        };
        let phase = match self.phase {
            PhaseScale::Unit => "exp(i|z|x_k)",
            PhaseScale::InverseSqrtPq => "exp(i|z|x_k/sqrt(p(1-p)))",
        };
        let weights = match self.weights {
            WeightRule::Christoffel => "Christoffel weights",
            WeightRule::InverseSquareTop => "1/K~(0)_N(x_k)^2",
        };
        write!(
            f,
            "roots: {roots}; phase: {phase}; weights: {weights}; residual {:.3e}, runner-up {:.3e}",
            self.residual, self.runner_up
        )
    }
}

const CANDIDATES: [(RootScaling, PhaseScale, WeightRule); 8] = [
    (
        RootScaling::Jacobi,
        PhaseScale::Unit,
        WeightRule::Christoffel,
    ),
    (
        RootScaling::Jacobi,
        PhaseScale::Unit,
        WeightRule::InverseSquareTop,
    ),
    (
        RootScaling::Jacobi,
        PhaseScale::InverseSqrtPq,
        WeightRule::Christoffel,
    ),
    (
        RootScaling::Jacobi,
        PhaseScale::InverseSqrtPq,
        WeightRule::InverseSquareTop,
    ),
    (RootScaling::Psi, PhaseScale::Unit, WeightRule::Christoffel),
    (
        RootScaling::Psi,
        PhaseScale::Unit,
        WeightRule::InverseSquareTop,
    ),
    (
        RootScaling::Psi,
        PhaseScale::InverseSqrtPq,
        WeightRule::Christoffel,
    ),
    (
        RootScaling::Psi,
        PhaseScale::InverseSqrtPq,
        WeightRule::InverseSquareTop,
    ),
];

/// Precomputed roots, weights and polynomial values for one `(p, N)`.
#[derive(Debug, Clone)]
pub struct RootSumEvaluator<T> {
    params: OscillatorParams<T>,
    calibration: Calibration,
    /// Phase frequencies `s x_k`.
    frequencies: Vec<T>,
    /// `W_k / sum W`.
    weights: Vec<T>,
    /// `psi~_l(y_k) / prod_{j<l}(sqrt(2) b_j)`, rows `l`, columns `k`.
    values: RealMatrix<T>,
}

struct Parts<T> {
    frequencies: Vec<T>,
    weights: Vec<T>,
    values: RealMatrix<T>,
}

fn parts<T: Real>(
    params: &OscillatorParams<T>,
    roots: RootScaling,
    phase: PhaseScale,
    rule: WeightRule,
) -> Result<Parts<T>> {
    let spectral = zero_diagonal_roots(params, roots)?;
    let v = &spectral.eigenvectors;
    let dim = params.dim();
    let top = params.n();
    let s = match phase {
        PhaseScale::Unit => T::one(),
        PhaseScale::InverseSqrtPq => T::one() / params.pq().sqrt(),
    };
    let frequencies = spectral.eigenvalues.iter().map(|&r| r * s).collect();
    // Scaling the matrix does not change its eigenvectors, whose components
    // are K~(0)_l(x_k) v[0,k] = psi~_l(y_k) / prod_{j<l}(sqrt(2) b_j) v[0,k].
    let values = RealMatrix::from_fn(dim, dim, |l, k| v[(l, k)] / v[(0, k)]);
    let raw: Vec<T> = (0..dim)
        .map(|k| match rule {
            WeightRule::Christoffel => v[(0, k)] * v[(0, k)],
            WeightRule::InverseSquareTop => {
                let top_value = values[(top, k)];
                T::one() / (top_value * top_value)
            }
        })
        .collect();
    let total = raw.iter().fold(T::zero(), |a, &b| a + b);
    if !(total.is_finite() && total > T::zero()) {
        return Err(Error::NonFinite("root-sum weights".into()));
    }
    Ok(Parts {
        frequencies,
        weights: raw.iter().map(|&w| w / total).collect(),
        values,
    })
}

fn assemble<T: Real>(parts: &Parts<T>, z: Complex<T>) -> Vec<Complex<T>> {
    let r = z.norm();
    let dim = parts.values.rows();
    if r == T::zero() {
        return FockVector::basis(0, dim).into_amplitudes();
    }
    let prefactor = Complex::new(T::zero(), -T::one()) * z / r;
    let phases: Vec<Complex<T>> = parts
        .frequencies
        .iter()
        .map(|&f| Complex::from_polar(T::one(), r * f))
        .collect();
    let mut out: Vec<Complex<T>> = (0..dim)
        .map(|l| {
            let sum = (0..dim).fold(Complex::zero(), |acc, k| {
                acc + phases[k] * (parts.weights[k] * parts.values[(l, k)])
            });
            prefactor.powu(l as u32) * sum
        })
        .collect();
    let n = out.iter().fold(T::zero(), |a, c| a + c.norm_sqr()).sqrt();
    for c in &mut out {
        *c = *c / n;
    }
    out
}

/// `cos^2|z|, -sqrt2 cos|z| sin|z| e^{i arg z}, sin^2|z| e^{2i arg z}` and
/// the one-level analogue.
fn reference<T: Real>(z: Complex<T>, n: usize) -> Vec<Complex<T>> {
    let r = z.norm();
    let u = z / r;
    let (c, s) = (r.cos(), r.sin());
    match n {
        1 => vec![Complex::new(c, T::zero()), -u * s],
        _ => vec![
            Complex::new(c * c, T::zero()),
            -u * (T::SQRT_2() * c * s),
            u * u * (s * s),
        ],
    }
}

/// Picks the unique candidate reproducing the one- and two-level states at
/// probability `p`.
pub fn calibrate<T: Real>(p: T) -> Result<Calibration> {
    let probes = [
        Complex::from_polar(T::of(0.7), T::PI() / T::of(5.0)),
        Complex::from_polar(T::of(1.9), T::of(-2.3)),
    ];
    let tol = T::tol(1e-9);
    let mut scored = Vec::with_capacity(CANDIDATES.len());
    for &(roots, phase, weights) in &CANDIDATES {
        let mut worst = T::zero();
        for n in [1usize, 2] {
            let params = OscillatorParams::new(p, n)?;
            let parts = parts(&params, roots, phase, weights)?;
            for &z in &probes {
                worst = worst.max(aligned_distance(&assemble(&parts, z), &reference(z, n))?);
            }
        }
        scored.push(((roots, phase, weights), worst));
    }
    let winners: Vec<_> = scored.iter().filter(|(_, d)| *d < tol).collect();
    if winners.len() != 1 {
        return Err(Error::Calibration(format!(
            "{} candidates reproduce the reference states",
            winners.len()
        )));
    }
    let ((roots, phase, weights), residual) = *winners[0];
    let runner_up = scored
        .iter()
        .filter(|(_, d)| *d >= tol)
        .fold(f64::INFINITY, |m, (_, d)| {
            m.min(d.to_f64().unwrap_or(f64::NAN))
        });
    Ok(Calibration {
        roots,
        phase,
        weights,
        residual: residual.to_f64().unwrap_or(f64::NAN),
        runner_up,
    })
}

impl<T: Real> RootSumEvaluator<T> {
    /// Calibrates at `params.p()` and precomputes everything for `params`.
    pub fn new(params: &OscillatorParams<T>) -> Result<Self> {
        let calibration = calibrate(params.p())?;
        let parts = parts(
            params,
            calibration.roots,
            calibration.phase,
            calibration.weights,
        )?;
        Ok(Self {
            params: *params,
            calibration,
            frequencies: parts.frequencies,
            weights: parts.weights,
            values: parts.values,
        })
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    pub fn params(&self) -> &OscillatorParams<T> {
        &self.params
    }

    /// Normalized state; `z = 0` gives `|0>`.
    pub fn state(&self, z: Complex<T>) -> Result<CoherentState<T>> {
        let label = CoherentLabel::new(z)?;
        let parts = Parts {
            frequencies: self.frequencies.clone(),
            weights: self.weights.clone(),
            values: self.values.clone(),
        };
        Ok(CoherentState {
            label,
            vector: FockVector::new(assemble(&parts, z)),
            family: CoherentFamily::RootSum,
        })
    }
}

/// One-shot convenience around [`RootSumEvaluator`].
pub fn root_sum_state<T: Real>(
    z: Complex<T>,
    params: &OscillatorParams<T>,
) -> Result<CoherentState<T>> {
    RootSumEvaluator::new(params)?.state(z)
}
