use num_complex::Complex;
use num_traits::Zero;

use super::{CoherentFamily, CoherentLabel, CoherentState};
use crate::numerics::{expm_skew_hermitian, ComplexMatrix};
use crate::oscillator::{build_ladder, FockVector};
use crate::polynomials::OscillatorParams;
use crate::{Error, Real, Result};

/// `G = z a+ - conj(z) a-`.
pub fn displacement_generator<T: Real>(
    z: Complex<T>,
    params: &OscillatorParams<T>,
) -> Result<ComplexMatrix<T>> {
    let l = build_ladder(params)?;
    Ok(&l.raise.matrix().scale(z) - &l.lower.matrix().scale(z.conj()))
}

/// `|z> = exp(z a+ - conj(z) a-) |0>`.
pub fn displacement_state<T: Real>(
    z: Complex<T>,
    params: &OscillatorParams<T>,
) -> Result<CoherentState<T>> {
    let label = CoherentLabel::new(z)?;
    let u = expm_skew_hermitian(&displacement_generator(z, params)?)?;
    Ok(CoherentState {
        label,
        vector: FockVector::new(u.column(0)),
        family: CoherentFamily::Displacement,
    })
}

/// `e[n][l] = <l|G^n|0> / (z^{(n+l)/2} (-conj z)^{(n-l)/2})` for
/// `n = 0..=n_max`, `l = 0..=min(n, N)`; entries with `n - l` odd are zero.
pub fn extract_coefficients<T: Real>(
    z: Complex<T>,
    params: &OscillatorParams<T>,
    n_max: usize,
) -> Result<Vec<Vec<Complex<T>>>> {
    if z.norm() == T::zero() {
        return Err(Error::ZeroDisplacement);
    }
    let powers = generator_powers(z, params, n_max)?;
    Ok(powers
        .iter()
        .enumerate()
        .map(|(n, v)| {
            (0..=n.min(params.n()))
                .map(|l| {
                    if (n - l) % 2 == 1 {
                        Complex::zero()
                    } else {
                        v[l] / (z.powu(((n + l) / 2) as u32)
                            * (-z.conj()).powu(((n - l) / 2) as u32))
                    }
                })
                .collect()
        })
        .collect())
}

fn generator_powers<T: Real>(
    z: Complex<T>,
    params: &OscillatorParams<T>,
    n_max: usize,
) -> Result<Vec<Vec<Complex<T>>>> {
    let g = displacement_generator(z, params)?;
    let mut v = FockVector::basis(0, params.dim()).into_amplitudes();
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        let next = g.mul_vec(&v);
        out.push(v);
        v = next;
    }
    Ok(out)
}

/// Coefficient table of the power expansion of `|z>` together with the two
/// structural checks on it.
#[derive(Debug, Clone)]
pub struct PowerExpansion<T> {
    /// `e[n][l]`, taken at the first probe label.
    pub coefficients: Vec<Vec<Complex<T>>>,
    /// Largest difference between the tables extracted at two labels,
    /// relative to `max(1, |e|)`.
    pub disagreement: T,
    /// Largest `|<l|G^n|0>|` over `n - l` odd or `l > n`.
    pub parity_violation: T,
}

pub fn power_expansion_coefficients<T: Real>(
    params: &OscillatorParams<T>,
    n_max: usize,
) -> Result<PowerExpansion<T>> {
    let z1 = Complex::from_polar(T::of(0.7), T::of(0.6));
    let z2 = Complex::from_polar(T::of(1.3), T::of(-2.1));
    let e1 = extract_coefficients(z1, params, n_max)?;
    let e2 = extract_coefficients(z2, params, n_max)?;
    let mut disagreement = T::zero();
    for (r1, r2) in e1.iter().zip(&e2) {
        for (a, b) in r1.iter().zip(r2) {
            disagreement = disagreement.max((*a - *b).norm() / a.norm().max(T::one()));
        }
    }
    let mut parity_violation = T::zero();
    for z in [z1, z2] {
        for (n, v) in generator_powers(z, params, n_max)?.iter().enumerate() {
            for (l, c) in v.iter().enumerate() {
                if l > n || (n + l) % 2 == 1 {
                    parity_violation = parity_violation.max(c.norm());
                }
            }
        }
    }
    Ok(PowerExpansion {
        coefficients: e1,
        disagreement,
        parity_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::oracle;

    type C = Complex<f64>;

    fn params(p: f64, n: usize) -> OscillatorParams<f64> {
        OscillatorParams::new(p, n).unwrap()
    }

    fn close(a: &[C], b: &[C], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn zero_label_is_ground_state() {
        let s = displacement_state(C::new(0.0, 0.0), &params(0.3, 5)).unwrap();
        assert_eq!(s.vector, FockVector::basis(0, 6));
    }

    #[test]
    fn matches_closed_form() {
        for n in [1, 2, 4, 9, 20] {
            for p in [0.2, 0.5] {
                for z in [
                    C::new(0.3, 0.0),
                    C::from_polar(1.1, 0.9),
                    C::from_polar(2.5, -2.0),
                ] {
                    let s = displacement_state(z, &params(p, n)).unwrap();
                    assert!(
                        close(s.amplitudes(), &oracle::displacement(z, n), 1e-11),
                        "n={n} z={z}"
                    );
                    assert!((s.vector.norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn continuity_at_small_label() {
        let s = displacement_state(C::from_polar(1e-6, 0.3), &params(0.4, 16)).unwrap();
        let d: f64 = s
            .amplitudes()
            .iter()
            .zip(FockVector::basis(0, 17).amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        assert!(d.sqrt() < 1e-5);
    }

    #[test]
    fn phase_covariance() {
        let pr = params(0.35, 7);
        let z = C::from_polar(0.8, 0.2);
        let phi = 1.1;
        let a = displacement_state(z, &pr).unwrap();
        let b = displacement_state(z * C::from_polar(1.0, phi), &pr).unwrap();
        for (l, (x, y)) in a.amplitudes().iter().zip(b.amplitudes()).enumerate() {
            assert!((x * C::from_polar(1.0, l as f64 * phi) - y).norm() < 1e-10);
        }
    }

    #[test]
    fn expansion() {
        let e = power_expansion_coefficients(&params(0.5, 6), 10).unwrap();
        assert_eq!(e.coefficients[0][0], C::new(1.0, 0.0));
        // G|0> = z a+|0> = -sqrt(N) z |1>
        assert!((e.coefficients[1][1] - C::new(-6f64.sqrt(), 0.0)).norm() < 1e-14);
        let single = power_expansion_coefficients(&params(0.5, 1), 4).unwrap();
        assert!((single.coefficients[1][1] - C::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(e.disagreement < 1e-9);
        assert_eq!(e.parity_violation, 0.0);
        // <0|G^2|0> = -|z|^2 N, so e_{2,0} = N
        assert!((e.coefficients[2][0] - C::new(6.0, 0.0)).norm() < 1e-12);
        assert_eq!(
            extract_coefficients(C::new(0.0, 0.0), &params(0.5, 6), 3),
            Err(Error::ZeroDisplacement)
        );
    }
}
