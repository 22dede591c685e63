use num_complex::Complex;
use num_traits::Zero;

use super::{CoherentFamily, CoherentLabel, CoherentState};
use crate::as_oscillator::{build_intertwiner, krawtchouk_function_matrix, GridFunction};
use crate::oscillator::FockVector;
use crate::polynomials::{binomial, OscillatorParams};
use crate::{Real, Result};

/// `(1 + |w|^2)^{-N/2} sqrt(C(N,n)) w^n`, `n = 0..=N`.
fn binomial_amplitudes<T: Real>(w: Complex<T>, params: &OscillatorParams<T>) -> Vec<Complex<T>> {
    let top = params.n();
    let norm = (T::one() + w.norm_sqr()).powf(-T::of_usize(top) / T::of(2.0));
    (0..=top)
        .map(|n| w.powu(n as u32) * (binomial::<T>(top, n).sqrt() * norm))
        .collect()
}

/// `<xi_j|xi> = (1 + |xi|^2)^{-N/2} sum_n sqrt(C(N,n)) xi^n Psi_n(xi_j)` on
/// the grid.
pub fn spin_wavefunction<T: Real>(
    xi: Complex<T>,
    params: &OscillatorParams<T>,
) -> Result<GridFunction<T>> {
    let psi = krawtchouk_function_matrix(params)?;
    let a = binomial_amplitudes(xi, params);
    let dim = params.dim();
    let values = (0..dim)
        .map(|j| (0..dim).fold(Complex::zero(), |s, n| s + a[n] * psi[(n, j)]))
        .collect();
    Ok(GridFunction { values })
}

/// The spin coherent state, mapped from the grid to the Fock basis with the
/// intertwiner.
pub fn spin_state<T: Real>(
    xi: Complex<T>,
    params: &OscillatorParams<T>,
) -> Result<CoherentState<T>> {
    let label = CoherentLabel::new(xi)?;
    let grid = spin_wavefunction(xi, params)?;
    let t = build_intertwiner(params)?;
    let fock = t.matrix().adjoint().mul_vec(&grid.values);
    Ok(CoherentState {
        label,
        vector: FockVector::new(fock),
        family: CoherentFamily::Spin,
    })
}

/// `|theta_n> = (N+1)^{-1/2} sum_k e^{i k theta_n} |k>` with
/// `theta_n = theta_0 + 2 pi n / (N+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseBasis<T> {
    pub theta0: T,
    pub states: Vec<FockVector<T>>,
}

impl<T: Real> PhaseBasis<T> {
    pub fn angle(&self, n: usize) -> T {
        self.theta0 + T::of(2.0) * T::PI() * T::of_usize(n) / T::of_usize(self.states.len())
    }
}

pub fn phase_basis<T: Real>(theta0: T, params: &OscillatorParams<T>) -> PhaseBasis<T> {
    let dim = params.dim();
    let scale = T::one() / T::of_usize(dim).sqrt();
    let states = (0..dim)
        .map(|n| {
            let theta = theta0 + T::of(2.0) * T::PI() * T::of_usize(n) / T::of_usize(dim);
            FockVector::new(
                (0..dim)
                    .map(|k| Complex::from_polar(scale, T::of_usize(k) * theta))
                    .collect(),
            )
        })
        .collect();
    PhaseBasis { theta0, states }
}

/// `(1 + |w|^2)^{-N/2} sum_n sqrt(C(N,n)) w^n |theta_n>`, `w = 2 pi z / (N+1)`.
pub fn phase_coherent_state<T: Real>(
    z: Complex<T>,
    theta0: T,
    params: &OscillatorParams<T>,
) -> Result<CoherentState<T>> {
    let label = CoherentLabel::new(z)?;
    let w = z * (T::of(2.0) * T::PI() / T::of_usize(params.dim()));
    let a = binomial_amplitudes(w, params);
    let basis = phase_basis(theta0, params);
    let dim = params.dim();
    let mut v = vec![Complex::zero(); dim];
    for (an, state) in a.iter().zip(&basis.states) {
        for (vk, sk) in v.iter_mut().zip(state.amplitudes()) {
            *vk = *vk + *an * *sk;
        }
    }
    Ok(CoherentState {
        label,
        vector: FockVector::new(v),
        family: CoherentFamily::Phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{aligned_distance, displacement_state, overlap};

    type C = Complex<f64>;

    fn params(p: f64, n: usize) -> OscillatorParams<f64> {
        OscillatorParams::new(p, n).unwrap()
    }

    #[test]
    fn spin_basics() {
        let pr = params(0.3, 6);
        let s = spin_state(C::new(0.0, 0.0), &pr).unwrap();
        assert!(
            aligned_distance(s.amplitudes(), FockVector::basis(0, 7).amplitudes()).unwrap() < 1e-12
        );
        let s = spin_state(C::new(1.0, 0.0), &params(0.5, 1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - C::new(h, 0.0)).norm() < 1e-12);
        assert!((s.amplitudes()[1] - C::new(h, 0.0)).norm() < 1e-12);
        for xi in [C::new(0.3, -2.0), C::new(5.0, 1.0)] {
            assert!((spin_state(xi, &pr).unwrap().vector.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spin_wavefunction_is_ground_at_zero() {
        let pr = params(0.2, 5);
        let g = spin_wavefunction(C::new(0.0, 0.0), &pr).unwrap();
        let psi = krawtchouk_function_matrix(&pr).unwrap();
        for j in 0..6 {
            assert!((g.values[j] - C::new(psi[(0, j)], 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn phase_basis_orthonormal() {
        let pr = params(0.5, 1);
        let b = phase_basis(0.0, &pr);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.states[1].amplitudes()[1] - C::new(-h, 0.0)).norm() < 1e-15);
        for n in [1, 5, 12] {
            let b = phase_basis(0.4, &params(0.5, n));
            for (i, a) in b.states.iter().enumerate() {
                for (j, c) in b.states.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((a.inner(c).unwrap() - C::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_state() {
        let pr = params(0.5, 1);
        let s = phase_coherent_state(C::new(1.0 / std::f64::consts::PI, 0.0), 0.0, &pr).unwrap();
        assert!((s.amplitudes()[0] - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!(s.amplitudes()[1].norm() < 1e-15);
        let pr = params(0.5, 7);
        let s = phase_coherent_state(C::new(0.0, 0.0), 0.3, &pr).unwrap();
        assert_eq!(s.vector, phase_basis(0.3, &pr).states[0]);
        assert!(
            (phase_coherent_state(C::new(-0.7, 2.2), 1.0, &pr)
                .unwrap()
                .vector
                .norm()
                - 1.0)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn families_differ_from_displacement() {
        let pr = params(0.5, 4);
        let one = C::new(1.0, 0.0);
        let d = displacement_state(one, &pr).unwrap();
        let s = spin_state(one, &pr).unwrap();
        let ph = phase_coherent_state(one, 0.0, &pr).unwrap();
        let c = 1f64.cos() - 1f64.sin();
        assert!((overlap(&s, &d).unwrap().norm() - c.powi(4) / 4.0).abs() < 1e-12);
        assert!(overlap(&s, &d).unwrap().norm() < 1.0 - 1e-3);
        assert!(overlap(&ph, &d).unwrap().norm() < 1.0 - 1e-3);
        assert!((overlap(&d, &d).unwrap() - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(overlap(&d, &displacement_state(one, &params(0.5, 3)).unwrap()).is_err());
    }
}
