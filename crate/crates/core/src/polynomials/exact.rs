use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::polynomials::OscillatorParams;
use crate::{Error, Real, Result};

/// Exact evaluator for the terminating sum
/// `K_n(x) = sum_k (-n)_k (-x)_k / (k! (-N)_k) p^{-k}`.
///
/// `p` and `x` are binary floating-point numbers, hence exact dyadic
/// rationals. Writing `p = m / 2^e` and `x = u / 2^f`, and using
/// `(-n)_k / (k! (-N)_k) = C(N-k, n-k) / (C(N, n) k!)`, the whole sum times
/// `C(N,n) m^n 2^{fn} n!` is the integer
///
/// `sum_k (-1)^k C(N-k, n-k) F_k (n!/k!) m^{n-k} 2^{f(n-k) + ek}`
///
/// with `F_k = prod_{j<k} (u - j 2^f)`. The quotient is rounded once, so the
/// result is correct to the last bit regardless of cancellation between the
/// alternating terms.
#[derive(Debug, Clone)]
pub struct ExactKrawtchouk {
    top: usize,
    e: usize,
    pow_m: Vec<BigInt>,
    binom: Vec<Vec<BigInt>>,
    fact: Vec<BigInt>,
}

impl ExactKrawtchouk {
    pub fn new<T: Real>(params: &OscillatorParams<T>) -> Self {
        let p = params.p().to_f64().expect("p converts to f64");
        let (m, exp) = dyadic(p).expect("p is finite");
        debug_assert!(exp < 0 && m.is_positive());
        let top = params.n();

        let mut pow_m = vec![BigInt::one()];
        for k in 1..=top {
            let next = &pow_m[k - 1] * &m;
            pow_m.push(next);
        }
        let mut binom: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for a in 0..=top {
            let mut row = vec![BigInt::one(); a + 1];
            for b in 1..a {
                row[b] = &binom[a - 1][b - 1] + &binom[a - 1][b];
            }
            binom.push(row);
        }
        let mut fact = vec![BigInt::one()];
        for k in 1..=top {
            let next = &fact[k - 1] * BigInt::from(k);
            fact.push(next);
        }
        Self {
            top,
            e: (-exp) as usize,
            pow_m,
            binom,
            fact,
        }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn eval<T: Real>(&self, n: usize, x: T) -> Result<T> {
        if n > self.top {
            return Err(Error::DegreeTooLarge {
                degree: n,
                n: self.top,
            });
        }
        let xf = x
            .to_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::NonFinite(format!("x = {x}")))?;
        let value = self.ratio(n, xf).to_f64().unwrap_or(f64::NAN);
        Ok(T::of(value))
    }

    fn ratio(&self, n: usize, x: f64) -> BigRational {
        let (u, f) = match dyadic(x) {
            Some((mant, exp)) if exp >= 0 => (mant << exp as usize, 0usize),
            Some((mant, exp)) => (mant, (-exp) as usize),
            None => (BigInt::zero(), 0),
        };
        let step = BigInt::one() << f;

        let mut falling = Vec::with_capacity(n + 1);
        falling.push(BigInt::one());
        let mut shift = BigInt::zero();
        for _ in 0..n {
            let last = falling.last().expect("non-empty");
            if last.is_zero() {
                break;
            }
            let next = last * (&u - &shift);
            falling.push(next);
            shift += &step;
        }

        let mut sum = BigInt::zero();
        let mut n_over_k = BigInt::one();
        for k in (0..=n).rev() {
            if k < falling.len() && !falling[k].is_zero() {
                let mut term = &self.binom[self.top - k][n - k] * &falling[k];
                term *= &n_over_k;
                term *= &self.pow_m[n - k];
                term <<= f * (n - k) + self.e * k;
                if k % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
            }
            if k > 0 {
                n_over_k *= BigInt::from(k);
            }
        }

        let mut denom = &self.binom[self.top][n] * &self.pow_m[n];
        denom *= &self.fact[n];
        denom <<= f * n;
        BigRational::new_raw(sum, denom)
    }
}

/// `v = mantissa * 2^exponent` with an odd mantissa; `None` for zero and
/// non-finite values.
fn dyadic(v: f64) -> Option<(BigInt, i64)> {
    if v == 0.0 || !v.is_finite() {
        return None;
    }
    let (mantissa, exponent, sign) = Float::integer_decode(v);
    let tz = mantissa.trailing_zeros();
    let m = BigInt::from(mantissa >> tz) * BigInt::from(sign);
    Some((m, exponent as i64 + tz as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::pochhammer;

    /// Term-by-term double-precision sum; reliable for small N.
    fn naive(n: usize, x: f64, p: f64, top: usize) -> f64 {
        (0..=n)
            .map(|k| {
                pochhammer(-(n as f64), k) * pochhammer(-x, k)
                    / (pochhammer(1.0, k) * pochhammer(-(top as f64), k))
                    * p.powi(-(k as i32))
            })
            .sum()
    }

    #[test]
    fn dyadic_decomposition() {
        assert_eq!(dyadic(0.5), Some((BigInt::from(1), -1)));
        assert_eq!(dyadic(6.0), Some((BigInt::from(3), 1)));
        assert_eq!(dyadic(-0.75), Some((BigInt::from(-3), -2)));
        assert_eq!(dyadic(0.0), None);
    }

    #[test]
    fn agrees_with_naive_sum_for_small_n() {
        for p in [0.2, 0.5, 0.85] {
            let top = 6;
            let ex = ExactKrawtchouk::new(&OscillatorParams::new(p, top).unwrap());
            for n in 0..=top {
                for x in [0.0, 1.0, 2.0, 3.5, -1.25, 6.0, 7.75] {
                    let a: f64 = ex.eval(n, x).unwrap();
                    let b = naive(n, x, p, top);
                    assert!(
                        (a - b).abs() <= 1e-11 * b.abs().max(1.0),
                        "n={n} x={x} p={p}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn self_duality_on_lattice() {
        // K_n(x) = K_x(n) for integers n, x in 0..=N
        let ex = ExactKrawtchouk::new(&OscillatorParams::new(0.3, 20).unwrap());
        for n in 0..=20usize {
            for x in 0..=20usize {
                let a: f64 = ex.eval(n, x as f64).unwrap();
                let b: f64 = ex.eval(x, n as f64).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn non_finite_argument_rejected() {
        let ex = ExactKrawtchouk::new(&OscillatorParams::new(0.3, 3).unwrap());
        assert!(matches!(ex.eval(1, f64::NAN), Err(Error::NonFinite(_))));
    }
}
