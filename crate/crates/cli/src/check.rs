//! The verification suite behind `check`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use krawtchouk::as_oscillator::{
    build_as_ladder, build_h_as, krawtchouk_functions, psi_basis_defect, raising_in_psi_basis,
    relation_check, GridFunction,
};
use krawtchouk::coherent::{
    aligned_distance, displacement_state, overlap, phase_basis, phase_coherent_state,
    power_expansion_coefficients, spin_state, RootSumEvaluator,
};
use krawtchouk::numerics::{eigh_hermitian, max_abs_diff};
use krawtchouk::oscillator::{commutator_check, spectrum_check};
use krawtchouk::polynomials::{
    difference_residual_max, orthogonality_gram, recurrence_agreement, recurrence_residual_max,
    recurrence_table,
};
use krawtchouk::{Complex64, ComplexMatrix, Params, RealMatrix};
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

pub const SWEEP_P: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
pub const SWEEP_N: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

/// Largest `N` for which the lattice recurrence and difference-equation
/// checks are run.
pub const RECURRENCE_MAX_N: usize = 32;

pub const COMMUTATOR_NOTE: &str = "commutator_diag = N − 2n (the published form prints (N−1)−2n)";
pub const AS_SPECTRUM_NOTE: &str =
    "H_AS eigenvalues are n + 1/2 (the published form prints n = 1/2)";

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CheckEntry {
    pub fn new(name: &str, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct CheckReport {
    pub pass: bool,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(entries: Vec<CheckEntry>) -> Self {
        Self {
            pass: entries.iter().all(|e| e.pass),
            entries,
        }
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Merges per-point reports entry by entry: worst residual, all must pass,
    /// notes deduplicated. Entry order follows first appearance.
    pub fn merge(reports: &[CheckReport]) -> Self {
        let mut merged: Vec<CheckEntry> = Vec::new();
        for e in reports.iter().flat_map(|r| &r.entries) {
            match merged.iter_mut().find(|m| m.name == e.name) {
                Some(m) => {
                    m.max_residual = m.max_residual.max(e.max_residual);
                    m.pass &= e.pass;
                    for n in &e.notes {
                        if !m.notes.contains(n) {
                            m.notes.push(n.clone());
                        }
                    }
                }
                None => merged.push(e.clone()),
            }
        }
        Self::new(merged)
    }
}

fn identity_defect(m: &RealMatrix) -> f64 {
    max_abs_diff(m, &RealMatrix::identity(m.rows()))
}

fn probe_labels() -> Vec<Complex64> {
    let mut out = Vec::new();
    for r in [0.1, 0.5, 1.0, 2.0] {
        for arg in [0.0, FRAC_PI_4, FRAC_PI_2] {
            out.push(Complex64::from_polar(r, arg));
        }
    }
    out
}

fn polynomial_checks(params: &Params, out: &mut Vec<CheckEntry>) -> Result<(), CliError> {
    let (gram, dual) = orthogonality_gram(params)?;
    out.push(CheckEntry::new(
        "orthogonality_gram",
        identity_defect(&gram),
        1e-10,
    ));
    out.push(CheckEntry::new(
        "orthogonality_dual",
        identity_defect(&dual),
        1e-10,
    ));
    if params.n() <= RECURRENCE_MAX_N {
        out.push(CheckEntry::new(
            "recurrence_agreement",
            recurrence_agreement(params)?,
            1e-9,
        ));
        let table = recurrence_table(params, &params.lattice())?;
        out.push(CheckEntry::new(
            "recurrence_residual",
            recurrence_residual_max(params, &table),
            1e-10,
        ));
        out.push(CheckEntry::new(
            "difference_equation",
            difference_residual_max(params)?,
            1e-10,
        ));
    }
    Ok(())
}

fn oscillator_checks(params: &Params, out: &mut Vec<CheckEntry>) -> Result<(), CliError> {
    let s = spectrum_check(params)?;
    let big = params.n() as f64;
    let degenerate = (s.formula[0] - big / 2.0)
        .abs()
        .max((s.formula[params.n()] - big / 2.0).abs());
    out.push(
        CheckEntry::new("spectrum", s.max_deviation.max(degenerate), 1e-10)
            .note("lambda_0 = lambda_N = N/2"),
    );
    let c = commutator_check(params)?;
    out.push(
        CheckEntry::new(
            "commutator_diag",
            c.deviation.max(c.off_diagonal_max),
            1e-12,
        )
        .note(COMMUTATOR_NOTE),
    );
    Ok(())
}

fn as_checks(params: &Params, out: &mut Vec<CheckEntry>) -> Result<(), CliError> {
    let dim = params.dim();
    let h = build_h_as(params)?;
    let eig = eigh_hermitian(h.matrix())?;
    let spectral = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (n, v)| m.max((v - (n as f64 + 0.5)).abs()));
    out.push(CheckEntry::new("as_spectrum", spectral, 1e-9).note(AS_SPECTRUM_NOTE));
    let mut action = 0.0f64;
    for (n, f) in krawtchouk_functions(params)?.iter().enumerate() {
        let hf = GridFunction::apply(&h, f);
        for (a, b) in hf.values.iter().zip(&f.values) {
            action = action.max((a - b * (n as f64 + 0.5)).norm());
        }
    }
    out.push(CheckEntry::new("as_eigen_residual", action, 1e-9));

    let l = build_as_ladder(params)?;
    let (r, lo, z) = (l.raise.matrix(), l.lower.matrix(), l.zero.matrix());
    let shift =
        ComplexMatrix::identity(dim).scale(Complex64::new((params.n() as f64 + 1.0) / 2.0, 0.0));
    out.push(CheckEntry::new(
        "as_factorization",
        max_abs_diff(h.matrix(), &(z + &shift)),
        1e-10,
    ));
    let so3 = max_abs_diff(&z.commutator(r), r).max(max_abs_diff(
        &z.commutator(lo),
        &lo.scale(Complex64::new(-1.0, 0.0)),
    ));
    out.push(CheckEntry::new("as_so3", so3, 1e-10));
    let up = raising_in_psi_basis(params);
    let ladder = psi_basis_defect(params, &l.raise, &up)?.max(psi_basis_defect(
        params,
        &l.lower,
        &up.adjoint(),
    )?);
    out.push(CheckEntry::new("as_ladder_action", ladder, 1e-9));
    let a0 = ComplexMatrix::from_diagonal(
        &(0..dim)
            .map(|n| Complex64::new(n as f64 - params.n() as f64 / 2.0, 0.0))
            .collect::<Vec<_>>(),
    );
    out.push(CheckEntry::new(
        "as_a0_diagonal",
        psi_basis_defect(params, &l.zero, &a0)?,
        1e-10,
    ));

    let rel = relation_check(params)?;
    out.push(CheckEntry::new("intertwiner_unitary", rel.unitarity, 1e-10));
    out.push(CheckEntry::new(
        "intertwiner_diagonal",
        rel.diagonal.max(rel.intertwining),
        1e-9,
    ));
    out.push(CheckEntry::new(
        "spectral_relation",
        rel.matrix.max(rel.scalar),
        1e-8,
    ));
    Ok(())
}

fn coherent_checks(params: &Params, out: &mut Vec<CheckEntry>) -> Result<(), CliError> {
    let labels = probe_labels();
    let mut norm = 0.0f64;
    let mut covariance = 0.0f64;
    let mut root_sum = 0.0f64;
    let evaluator = RootSumEvaluator::new(params)?;
    for &z in &labels {
        let d = displacement_state(z, params)?;
        norm = norm.max((d.vector.norm() - 1.0).abs());
        let phi = 0.7;
        let rotated = displacement_state(z * Complex64::from_polar(1.0, phi), params)?;
        for (l, (a, b)) in d.amplitudes().iter().zip(rotated.amplitudes()).enumerate() {
            covariance =
                covariance.max((a * Complex64::from_polar(1.0, l as f64 * phi) - b).norm());
        }
        let e = evaluator.state(z)?;
        norm = norm.max((e.vector.norm() - 1.0).abs());
        root_sum = root_sum.max(aligned_distance(e.amplitudes(), d.amplitudes())?);
        norm = norm.max((spin_state(z, params)?.vector.norm() - 1.0).abs());
        norm = norm.max((phase_coherent_state(z, 0.0, params)?.vector.norm() - 1.0).abs());
    }
    let zero = displacement_state(Complex64::new(0.0, 0.0), params)?;
    let ground = zero
        .amplitudes()
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (l, c)| {
            m.max((c - Complex64::new(if l == 0 { 1.0 } else { 0.0 }, 0.0)).norm())
        });
    out.push(CheckEntry::new("coherent_normalization", norm, 1e-12));
    out.push(CheckEntry::new("displacement_zero", ground, 1e-15));
    out.push(CheckEntry::new(
        "displacement_covariance",
        covariance,
        1e-10,
    ));

    let single = params.with_n(1)?;
    let mut closed = 0.0f64;
    for &z in &labels {
        let d = displacement_state(z, &single)?;
        let (r, u) = (z.norm(), z / z.norm());
        closed = closed.max((d.amplitudes()[0] - Complex64::new(r.cos(), 0.0)).norm());
        closed = closed.max((d.amplitudes()[1] + u * r.sin()).norm());
    }
    out.push(CheckEntry::new("displacement_single_level", closed, 1e-12));
    out.push(
        CheckEntry::new("root_sum_equivalence", root_sum, 1e-7)
            .note(format!("calibration: {}", evaluator.calibration())),
    );

    let expansion = power_expansion_coefficients(params, 12)?;
    out.push(CheckEntry::new(
        "expansion_parity",
        expansion.parity_violation,
        1e-12,
    ));
    out.push(CheckEntry::new(
        "expansion_z_independence",
        expansion.disagreement,
        1e-9,
    ));

    let mut ortho = 0.0f64;
    for theta0 in [0.0, 0.4] {
        let basis = phase_basis(theta0, params);
        for (i, a) in basis.states.iter().enumerate() {
            for (j, b) in basis.states.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((a.inner(b)? - Complex64::new(want, 0.0)).norm());
            }
        }
    }
    out.push(CheckEntry::new("phase_basis_orthonormal", ortho, 1e-12));
    Ok(())
}

/// Spin and phase states at `z = xi = 1` overlap the displacement state by
/// less than `1 - 1e-3`; the reported residual is the larger overlap
/// modulus minus that bound, so a pass is a non-positive residual.
pub fn distinctness_entry(params: &Params) -> Result<CheckEntry, CliError> {
    let one = Complex64::new(1.0, 0.0);
    let d = displacement_state(one, params)?;
    let s = overlap(&spin_state(one, params)?, &d)?.norm();
    let ph = overlap(&phase_coherent_state(one, 0.0, params)?, &d)?.norm();
    let worst = s.max(ph);
    let mut e = CheckEntry::new("families_distinct", worst, 1.0 - 1e-3);
    e.notes
        .push(format!("|<spin|disp>| = {s}, |<phase|disp>| = {ph}"));
    Ok(e)
}

/// Every check at one parameter point.
pub fn run_suite(params: &Params) -> Result<CheckReport, CliError> {
    let mut entries = Vec::new();
    polynomial_checks(params, &mut entries)?;
    oscillator_checks(params, &mut entries)?;
    as_checks(params, &mut entries)?;
    coherent_checks(params, &mut entries)?;
    entries.push(distinctness_entry(params)?);
    Ok(CheckReport::new(entries))
}

/// The sweep grid in row-major `(p, N)` order.
pub fn sweep_grid() -> Vec<Params> {
    SWEEP_P
        .iter()
        .flat_map(|&p| {
            SWEEP_N
                .iter()
                .map(move |&n| Params::new(p, n).expect("valid sweep grid"))
        })
        .collect()
}

/// Runs the suite over `grid` in parallel; results come back in grid order.
pub fn run_sweep(grid: &[Params]) -> Result<Vec<(Params, CheckReport)>, CliError> {
    grid.par_iter()
        .map(|p| run_suite(p).map(|r| (*p, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_pass_rule() {
        assert!(CheckEntry::new("a", 1e-11, 1e-10).pass);
        assert!(CheckEntry::new("a", 1e-10, 1e-10).pass);
        assert!(!CheckEntry::new("a", 2e-10, 1e-10).pass);
        assert!(!CheckEntry::new("a", f64::NAN, 1e-10).pass);
    }

    #[test]
    fn merge_keeps_worst() {
        let a = CheckReport::new(vec![
            CheckEntry::new("x", 1e-12, 1e-10).note("n1"),
            CheckEntry::new("y", 0.0, 1.0),
        ]);
        let b = CheckReport::new(vec![CheckEntry::new("x", 5e-10, 1e-10).note("n1")]);
        let m = CheckReport::merge(&[a, b]);
        assert!(!m.pass);
        let x = m.entry("x").unwrap();
        assert_eq!(x.max_residual, 5e-10);
        assert!(!x.pass);
        assert_eq!(x.notes, vec!["n1".to_string()]);
        assert!(m.entry("y").unwrap().pass);
    }

    #[test]
    fn sweep_grid_order() {
        let g = sweep_grid();
        assert_eq!(g.len(), 35);
        assert_eq!((g[0].p(), g[0].n()), (0.1, 1));
        assert_eq!((g[6].p(), g[6].n()), (0.1, 64));
        assert_eq!((g[7].p(), g[7].n()), (0.3, 1));
    }

    #[test]
    fn suite_passes_at_a_small_point() {
        let r = run_suite(&Params::new(0.3, 5).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r
            .entry("commutator_diag")
            .unwrap()
            .notes
            .iter()
            .any(|n| n == COMMUTATOR_NOTE));
    }
}
