use crate::numerics::RealMatrix;
use crate::polynomials::{
    binomial, weight, ExactKrawtchouk, OscillatorParams, RecurrenceCoefficients,
};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `K_n`
    Plain,
    /// `K~_n`, orthonormal under the binomial weight
    Renormalized,
    /// `K~^(0)_n`, same off-diagonal, zero diagonal
    Auxiliary,
    /// `psi~_n`, monic rescaling of the auxiliary family
    Psi,
}

/// Polynomial values indexed `(degree, point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialTable<T> {
    pub family: Family,
    pub points: Vec<T>,
    pub values: RealMatrix<T>,
}

impl<T: Real> PolynomialTable<T> {
    pub fn degrees(&self) -> usize {
        self.values.rows()
    }

    pub fn get(&self, degree: usize, point: usize) -> T {
        self.values[(degree, point)]
    }

    pub fn row(&self, degree: usize) -> &[T] {
        self.values.row(degree)
    }

    /// `sqrt(sum_n values[n][point]^2)`.
    pub fn column_norm(&self, point: usize) -> T {
        (0..self.degrees())
            .map(|n| self.get(n, point).powi(2))
            .sum::<T>()
            .sqrt()
    }
}

/// `c_n = sqrt(C_N^n (p/(1-p))^n)`, the factor turning `K_n` into the
/// orthonormal `K~_n`. Equals `sqrt(rho(n)/rho(0))`.
pub fn renormalization<T: Real>(params: &OscillatorParams<T>) -> Vec<T> {
    let ratio = params.p() / params.q();
    (0..=params.n())
        .map(|n| (binomial::<T>(params.n(), n) * ratio.powi(n as i32)).sqrt())
        .collect()
}

fn check_points<T: Real>(eval_set: &[T]) -> Result<()> {
    match eval_set.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Error::NonFinite(format!("evaluation point {v}"))),
        None => Ok(()),
    }
}

/// Plain `K_n(x)` for `n = 0..=N` by the exact direct sum.
pub fn krawtchouk_table<T: Real>(
    params: &OscillatorParams<T>,
    eval_set: &[T],
) -> Result<PolynomialTable<T>> {
    check_points(eval_set)?;
    let ex = ExactKrawtchouk::new(params);
    let mut values = RealMatrix::zeros(params.dim(), eval_set.len());
    for n in 0..params.dim() {
        for (j, &x) in eval_set.iter().enumerate() {
            values[(n, j)] = ex.eval(n, x)?;
        }
    }
    Ok(PolynomialTable {
        family: Family::Plain,
        points: eval_set.to_vec(),
        values,
    })
}

/// `K~_n(x) = c_n K_n(x)` by the exact direct sum; `K~_0 = 1`.
pub fn renormalized_table<T: Real>(
    params: &OscillatorParams<T>,
    eval_set: &[T],
) -> Result<PolynomialTable<T>> {
    let mut t = krawtchouk_table(params, eval_set)?;
    for (n, c) in renormalization(params).into_iter().enumerate() {
        for j in 0..eval_set.len() {
            t.values[(n, j)] = t.values[(n, j)] * c;
        }
    }
    t.family = Family::Renormalized;
    Ok(t)
}

/// `K~_n(x)` from the three-term recurrence
/// `x K~_n = b_n K~_{n+1} + a_n K~_n + b_{n-1} K~_{n-1}`.
///
/// Off the lattice the recurrence runs forward from `K~_0 = 1`. On a lattice
/// point `x in 0..=N` the column is an eigenvector of the Jacobi matrix, and
/// the forward recurrence alone is unstable wherever that eigenvector decays
/// with `n`. There the recurrence is also run backward from the top (where
/// `b_N = 0` closes it) and the two halves are joined at the index where the
/// twisted factorization of `J - x` has its smallest pivot, i.e. where the
/// eigenvector is large and both runs are accurate.
pub fn recurrence_table<T: Real>(
    params: &OscillatorParams<T>,
    eval_set: &[T],
) -> Result<PolynomialTable<T>> {
    check_points(eval_set)?;
    let rc = RecurrenceCoefficients::new(params);
    let top = params.n();
    let mut values = RealMatrix::zeros(params.dim(), eval_set.len());
    for (j, &x) in eval_set.iter().enumerate() {
        let on_lattice = x >= T::zero() && x <= T::of_usize(top) && x.fract() == T::zero();
        let column = if on_lattice {
            twisted_column(&rc, x)
        } else {
            forward_column(&rc, x, top)
        };
        for (n, v) in column.into_iter().enumerate() {
            values[(n, j)] = v;
        }
    }
    Ok(PolynomialTable {
        family: Family::Renormalized,
        points: eval_set.to_vec(),
        values,
    })
}

fn forward_column<T: Real>(rc: &RecurrenceCoefficients<T>, x: T, top: usize) -> Vec<T> {
    let mut f = vec![T::zero(); top + 1];
    f[0] = T::one();
    for n in 0..top {
        let prev = if n > 0 {
            rc.b[n - 1] * f[n - 1]
        } else {
            T::zero()
        };
        f[n + 1] = ((x - rc.a[n]) * f[n] - prev) / rc.b[n];
    }
    f
}

fn twisted_column<T: Real>(rc: &RecurrenceCoefficients<T>, x: T) -> Vec<T> {
    let top = rc.a.len() - 1;
    let shifted: Vec<T> = rc.a.iter().map(|&a| a - x).collect();

    let mut down = vec![T::zero(); top + 1];
    down[0] = shifted[0];
    for i in 1..=top {
        down[i] = shifted[i] - rc.b[i - 1].powi(2) / down[i - 1];
    }
    let mut up = vec![T::zero(); top + 1];
    up[top] = shifted[top];
    for i in (0..top).rev() {
        up[i] = shifted[i] - rc.b[i].powi(2) / up[i + 1];
    }
    let twist = (0..=top)
        .filter_map(|k| {
            let gamma = down[k] + up[k] - shifted[k];
            gamma.is_finite().then_some((k, gamma.abs()))
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .map_or(top, |(k, _)| k);

    let mut f = forward_column(rc, x, twist);
    f.resize(top + 1, T::zero());
    let mut g = vec![T::zero(); top + 1];
    g[top] = T::one();
    for i in (twist + 1..=top).rev() {
        let next = if i < top {
            rc.b[i] * g[i + 1]
        } else {
            T::zero()
        };
        g[i - 1] = ((x - rc.a[i]) * g[i] - next) / rc.b[i - 1];
    }
    let scale = f[twist] / g[twist];
    for i in twist + 1..=top {
        f[i] = g[i] * scale;
    }
    f
}

/// Largest disagreement between the direct-sum and recurrence tables on the
/// lattice, relative to each column's norm `sqrt(sum_n K~_n(x)^2)`.
pub fn recurrence_agreement<T: Real>(params: &OscillatorParams<T>) -> Result<T> {
    let lattice = params.lattice();
    let direct = renormalized_table(params, &lattice)?;
    let rec = recurrence_table(params, &lattice)?;
    let mut worst = T::zero();
    for j in 0..lattice.len() {
        let scale = direct.column_norm(j);
        for n in 0..params.dim() {
            worst = worst.max((direct.get(n, j) - rec.get(n, j)).abs() / scale);
        }
    }
    Ok(worst)
}

/// Largest residual of the three-term recurrence evaluated on a renormalized
/// table, relative to the column norm. The top row uses `b_N = 0`, so the
/// check is only meaningful on lattice points.
pub fn recurrence_residual_max<T: Real>(
    params: &OscillatorParams<T>,
    table: &PolynomialTable<T>,
) -> T {
    let rc = RecurrenceCoefficients::new(params);
    let top = params.n();
    let mut worst = T::zero();
    for (j, &x) in table.points.iter().enumerate() {
        let scale = table.column_norm(j);
        for n in 0..=top {
            let up = if n < top {
                rc.b[n] * table.get(n + 1, j)
            } else {
                T::zero()
            };
            let down = if n > 0 {
                rc.b[n - 1] * table.get(n - 1, j)
            } else {
                T::zero()
            };
            let r = x * table.get(n, j) - up - rc.a[n] * table.get(n, j) - down;
            worst = worst.max(r.abs() / scale);
        }
    }
    worst
}

fn difference_at<T: Real>(params: &OscillatorParams<T>, row: &[T], n: usize, x: usize) -> T {
    let top = params.n();
    let (p, q) = (params.p(), params.q());
    let up = p * T::of_usize(top - x);
    let down = T::of_usize(x) * q;
    let mut r = T::of_usize(n) * row[x] - (up + down) * row[x];
    if x < top {
        r = r + up * row[x + 1];
    }
    if x > 0 {
        r = r + down * row[x - 1];
    }
    r
}

/// Residual of the difference equation in `x`,
/// `n K~_n(x) + p(N-x) K~_n(x+1) - [p(N-x) + x(1-p)] K~_n(x) + x(1-p) K~_n(x-1)`.
/// Terms whose coefficient vanishes (`x = 0`, `x = N`) are dropped.
pub fn difference_residual<T: Real>(n: usize, x: usize, params: &OscillatorParams<T>) -> Result<T> {
    if n > params.n() {
        return Err(Error::DegreeTooLarge {
            degree: n,
            n: params.n(),
        });
    }
    if x > params.n() {
        return Err(Error::OffLattice(x as f64));
    }
    let t = renormalized_table(params, &params.lattice())?;
    Ok(difference_at(params, t.row(n), n, x))
}

/// Largest difference-equation residual over the lattice, each relative to
/// the largest `|K~_n(x)|` of its row.
pub fn difference_residual_max<T: Real>(params: &OscillatorParams<T>) -> Result<T> {
    let t = renormalized_table(params, &params.lattice())?;
    let mut worst = T::zero();
    for n in 0..params.dim() {
        let row = t.row(n);
        let scale = row.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        for x in 0..=params.n() {
            worst = worst.max(difference_at(params, row, n, x).abs() / scale);
        }
    }
    Ok(worst)
}

/// The Gram matrix `G_mn = sum_x rho(x) K~_m(x) K~_n(x)` and the dual
/// `D_xy = sqrt(rho(x) rho(y)) sum_n K~_n(x) K~_n(y)`; both are the identity.
pub fn orthogonality_gram<T: Real>(
    params: &OscillatorParams<T>,
) -> Result<(RealMatrix<T>, RealMatrix<T>)> {
    let dim = params.dim();
    let t = renormalized_table(params, &params.lattice())?;
    let rho = (0..dim)
        .map(|x| weight(x, params))
        .collect::<Result<Vec<T>>>()?;
    let gram = RealMatrix::from_fn(dim, dim, |m, n| {
        (0..dim).map(|x| rho[x] * t.get(m, x) * t.get(n, x)).sum()
    });
    let dual = RealMatrix::from_fn(dim, dim, |x, y| {
        (rho[x] * rho[y]).sqrt() * (0..dim).map(|n| t.get(n, x) * t.get(n, y)).sum::<T>()
    });
    Ok((gram, dual))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, n: usize) -> OscillatorParams<f64> {
        OscillatorParams::new(p, n).unwrap()
    }

    fn identity_defect(m: &RealMatrix<f64>) -> f64 {
        (m - &RealMatrix::identity(m.rows())).max_abs()
    }

    #[test]
    fn first_row_is_one() {
        let t = renormalized_table(&params(0.3, 5), &[0.0, 1.0, 2.5, -3.0]).unwrap();
        assert!(t.row(0).iter().all(|&v| v == 1.0));
    }

    #[test]
    fn gram_for_single_level_by_hand() {
        // N = 1, p = 1/2: K~_0 = 1, K~_1(x) = 1 - 2x, rho = (1/2, 1/2)
        let (g, d) = orthogonality_gram(&params(0.5, 1)).unwrap();
        assert_eq!(g, RealMatrix::identity(2));
        assert_eq!(d, RealMatrix::identity(2));
    }

    #[test]
    fn gram_and_dual_are_identity() {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for n in [1, 2, 5, 16, 40] {
                let (g, d) = orthogonality_gram(&params(p, n)).unwrap();
                assert!(identity_defect(&g) < 1e-10, "p={p} N={n}");
                assert!(identity_defect(&d) < 1e-10, "p={p} N={n}");
            }
        }
    }

    #[test]
    fn recurrence_matches_direct_sum() {
        for p in [0.1, 0.5, 0.9] {
            for n in [1, 3, 12, 32] {
                let pr = params(p, n);
                assert!(recurrence_agreement(&pr).unwrap() < 1e-9, "p={p} N={n}");
                let t = renormalized_table(&pr, &pr.lattice()).unwrap();
                assert!(recurrence_residual_max(&pr, &t) < 1e-10);
            }
        }
    }

    #[test]
    fn forward_recurrence_off_lattice() {
        let pr = params(0.35, 6);
        let pts = [0.5, -1.25, 2.75, 8.0];
        let a = renormalized_table(&pr, &pts).unwrap();
        let b = recurrence_table(&pr, &pts).unwrap();
        for n in 0..7 {
            for j in 0..pts.len() {
                assert!((a.get(n, j) - b.get(n, j)).abs() < 1e-10 * a.get(n, j).abs().max(1.0));
            }
        }
    }

    #[test]
    fn difference_equation() {
        let pr = params(0.3, 8);
        for x in 0..=8 {
            assert!(difference_residual(0, x, &pr).unwrap().abs() < 1e-14);
        }
        for n in 0..=8 {
            assert!(difference_residual(n, 0, &pr).unwrap().abs() < 1e-10);
        }
        assert!(difference_residual_max(&pr).unwrap() < 1e-10);
        assert!(difference_residual(9, 0, &pr).is_err());
        assert!(difference_residual(1, 9, &pr).is_err());
    }

    #[test]
    fn non_finite_points_rejected() {
        assert!(renormalized_table(&params(0.3, 2), &[f64::INFINITY]).is_err());
    }
}
