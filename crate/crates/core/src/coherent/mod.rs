//! Coherent states of the oscillator: displacement, the explicit root-sum,
//! spin and phase families, and tools to compare them.

mod displacement;
mod root_sum;
mod spin_phase;

pub use displacement::{
    displacement_generator, displacement_state, extract_coefficients, power_expansion_coefficients,
    PowerExpansion,
};
pub use root_sum::{root_sum_state, Calibration, PhaseScale, RootSumEvaluator, WeightRule};
pub use spin_phase::{
    phase_basis, phase_coherent_state, spin_state, spin_wavefunction, PhaseBasis,
};

use std::fmt;

use num_complex::Complex;

use crate::oscillator::FockVector;
use crate::{Error, Real, Result};

/// A complex label `z` with its modulus and, for `z != 0`, its phase `z/|z|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentLabel<T> {
    z: Complex<T>,
    modulus: T,
    phase: Option<Complex<T>>,
}

impl<T: Real> CoherentLabel<T> {
    pub fn new(z: Complex<T>) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite(format!("label {z}")));
        }
        let modulus = z.norm();
        let phase = (modulus > T::zero()).then(|| z / modulus);
        Ok(Self { z, modulus, phase })
    }

    pub fn z(&self) -> Complex<T> {
        self.z
    }

    pub fn modulus(&self) -> T {
        self.modulus
    }

    pub fn phase(&self) -> Option<Complex<T>> {
        self.phase
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoherentFamily {
    Displacement,
    RootSum,
    Spin,
    Phase,
}

impl CoherentFamily {
    pub fn name(self) -> &'static str {
        match self {
            CoherentFamily::Displacement => "disp",
            CoherentFamily::RootSum => "eq49",
            CoherentFamily::Spin => "spin",
            CoherentFamily::Phase => "phase",
        }
    }
}

impl fmt::Display for CoherentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normalized state in the Fock basis with the label it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState<T> {
    pub label: CoherentLabel<T>,
    pub vector: FockVector<T>,
    pub family: CoherentFamily,
}

impl<T: Real> CoherentState<T> {
    pub fn amplitudes(&self) -> &[Complex<T>] {
        self.vector.amplitudes()
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }
}

/// `<s1|s2>`.
pub fn overlap<T: Real>(s1: &CoherentState<T>, s2: &CoherentState<T>) -> Result<Complex<T>> {
    s1.vector.inner(&s2.vector)
}

/// Euclidean distance after removing the global phase of each vector, the
/// phase being read off the largest amplitude of `a` (and the same index
/// of `b`).
pub fn aligned_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Empty("state vector"));
    }
    let m = (0..a.len())
        .max_by(|&i, &j| {
            a[i].norm()
                .partial_cmp(&a[j].norm())
                .expect("finite amplitudes")
        })
        .expect("non-empty");
    let unit = |c: Complex<T>| {
        if c.norm() > T::zero() {
            c.conj() / c.norm()
        } else {
            Complex::new(T::one(), T::zero())
        }
    };
    let (ua, ub) = (unit(a[m]), unit(b[m]));
    Ok(a.iter()
        .zip(b)
        .fold(T::zero(), |s, (x, y)| s + (*x * ua - *y * ub).norm_sqr())
        .sqrt())
}


#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn label() {
        let l = CoherentLabel::new(C::new(3.0, 4.0)).unwrap();
        assert_eq!(l.modulus(), 5.0);
        assert_eq!(l.phase(), Some(C::new(0.6, 0.8)));
        assert_eq!(CoherentLabel::new(C::new(0.0, 0.0)).unwrap().phase(), None);
        assert!(CoherentLabel::new(C::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn alignment_ignores_global_phase() {
        let a = vec![C::new(0.6, 0.0), C::new(0.0, 0.8)];
        let rot = C::from_polar(1.0, 1.234);
        let b: Vec<C> = a.iter().map(|c| c * rot).collect();
        assert!(aligned_distance(&a, &b).unwrap() < 1e-15);
        assert!(aligned_distance(&a, &b[..1]).is_err());
        let c = vec![C::new(0.6, 0.0), C::new(0.0, -0.8)];
        assert!((aligned_distance(&a, &c).unwrap() - 1.2).abs() < 1e-15);
    }
}
