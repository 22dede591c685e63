use krawtchouk::as_oscillator::{build_h_as, relation_check};
use krawtchouk::coherent::{
    aligned_distance, displacement_state, overlap, phase_coherent_state, spin_state, CoherentState,
    RootSumEvaluator,
};
use krawtchouk::numerics::eigh_hermitian;
use krawtchouk::oscillator::{build_tilde_operators, spectrum_check};
use krawtchouk::polynomials::{zero_diagonal_roots, RootScaling};
use krawtchouk::Params;
use serde_json::{json, Value};

use crate::check::{run_suite, run_sweep, sweep_grid, CheckEntry, CheckReport, SWEEP_N, SWEEP_P};
use crate::output::{Document, Table};
use crate::{CliError, Command, FamilyArg, RunConfig};

fn base_params(cfg: &RunConfig) -> Value {
    json!({ "p": cfg.params.p(), "N": cfg.params.n() })
}

fn with_labels(cfg: &RunConfig) -> Value {
    let mut v = base_params(cfg);
    let obj = v.as_object_mut().expect("object");
    obj.insert("z".into(), json!([cfg.z.re, cfg.z.im]));
    obj.insert("xi".into(), json!([cfg.xi.re, cfg.xi.im]));
    obj.insert("theta0".into(), json!(cfg.theta0));
    obj.insert("family".into(), json!(family_name(cfg.family)));
    v
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Disp => "disp",
        FamilyArg::RootSum => "eq49",
        FamilyArg::Spin => "spin",
        FamilyArg::Phase => "phase",
    }
}

/// Runs one command, writes its output and reports whether everything it
/// checked passed.
pub fn execute(cmd: &Command) -> Result<bool, CliError> {
    let (cfg, doc) = match cmd {
        Command::Spectrum(c) => {
            let cfg = RunConfig::from_common(c)?;
            let doc = spectrum(&cfg)?;
            (cfg, doc)
        }
        Command::Coherent(a) => {
            let cfg = RunConfig::from_coherent(a)?;
            let doc = coherent(&cfg)?;
            (cfg, doc)
        }
        Command::Overlap(a) => {
            let cfg = RunConfig::from_coherent(a)?;
            let doc = overlaps(&cfg)?;
            (cfg, doc)
        }
        Command::Roots(c) => {
            let cfg = RunConfig::from_common(c)?;
            let doc = roots(&cfg)?;
            (cfg, doc)
        }
        Command::AsCompare(c) => {
            let cfg = RunConfig::from_common(c)?;
            let doc = as_compare(&cfg)?;
            (cfg, doc)
        }
        Command::Check(a) => {
            let cfg = RunConfig::from_check(a)?;
            let doc = check(&cfg)?;
            (cfg, doc)
        }
    };
    doc.emit(cfg.format, cfg.out.as_deref())?;
    Ok(doc.report.as_ref().is_none_or(|r| r.pass))
}

pub fn spectrum(cfg: &RunConfig) -> Result<Document, CliError> {
    let s = spectrum_check(&cfg.params)?;
    let h_as = eigh_hermitian(build_h_as(&cfg.params)?.matrix())?;
    let mut t = Table::new(&["n", "lambda_computed", "lambda_formula", "lambda_as"]);
    for n in 0..cfg.params.dim() {
        t.push(vec![
            n.into(),
            s.computed[n].into(),
            s.formula[n].into(),
            h_as.eigenvalues[n].into(),
        ]);
    }
    Ok(Document {
        params: base_params(cfg),
        command: "spectrum".into(),
        rows: t,
        report: None,
        notes: vec![],
    })
}

fn state_of(
    cfg: &RunConfig,
    family: FamilyArg,
    root_sum: Option<&RootSumEvaluator<f64>>,
) -> Result<CoherentState<f64>, CliError> {
    Ok(match family {
        FamilyArg::Disp => displacement_state(cfg.z, &cfg.params)?,
        FamilyArg::RootSum => match root_sum {
            Some(ev) => ev.state(cfg.z)?,
            None => RootSumEvaluator::new(&cfg.params)?.state(cfg.z)?,
        },
        FamilyArg::Spin => spin_state(cfg.xi, &cfg.params)?,
        FamilyArg::Phase => phase_coherent_state(cfg.z, cfg.theta0, &cfg.params)?,
    })
}

pub fn coherent(cfg: &RunConfig) -> Result<Document, CliError> {
    let mut notes = Vec::new();
    let state = if cfg.family == FamilyArg::RootSum {
        let ev = RootSumEvaluator::new(&cfg.params)?;
        notes.push(format!("calibration: {}", ev.calibration()));
        if cfg.z.norm() == 0.0 {
            notes.push(
                "z = 0: the root sum is undefined there; |0> is returned by continuity".into(),
            );
        }
        ev.state(cfg.z)?
    } else {
        state_of(cfg, cfg.family, None)?
    };
    let mut t = Table::new(&["l", "re", "im", "prob"]);
    for (l, c) in state.amplitudes().iter().enumerate() {
        t.push(vec![
            l.into(),
            c.re.into(),
            c.im.into(),
            c.norm_sqr().into(),
        ]);
    }
    Ok(Document {
        params: with_labels(cfg),
        command: "coherent".into(),
        rows: t,
        report: None,
        notes,
    })
}

pub fn overlaps(cfg: &RunConfig) -> Result<Document, CliError> {
    let ev = RootSumEvaluator::new(&cfg.params)?;
    let families = [
        FamilyArg::Disp,
        FamilyArg::RootSum,
        FamilyArg::Spin,
        FamilyArg::Phase,
    ];
    let states = families
        .iter()
        .map(|&f| state_of(cfg, f, Some(&ev)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["a", "b", "re", "im", "abs", "aligned_distance"]);
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let o = overlap(&states[i], &states[j])?;
            let d = aligned_distance(states[i].amplitudes(), states[j].amplitudes())?;
            t.push(vec![
                family_name(families[i]).into(),
                family_name(families[j]).into(),
                o.re.into(),
                o.im.into(),
                o.norm().into(),
                d.into(),
            ]);
        }
    }
    let notes = vec![format!("calibration: {}", ev.calibration())];
    Ok(Document {
        params: with_labels(cfg),
        command: "overlap".into(),
        rows: t,
        report: None,
        notes,
    })
}

pub fn roots(cfg: &RunConfig) -> Result<Document, CliError> {
    let spectral = zero_diagonal_roots(&cfg.params, RootScaling::Jacobi)?;
    let mut t = Table::new(&["k", "x", "y", "weight"]);
    for (k, &x) in spectral.eigenvalues.iter().enumerate() {
        let v0 = spectral.eigenvectors[(0, k)];
        t.push(vec![
            k.into(),
            x.into(),
            (x * std::f64::consts::SQRT_2).into(),
            (v0 * v0).into(),
        ]);
    }
    let notes = vec!["x: zeros of the degree N+1 zero-diagonal polynomial; y = sqrt(2) x: zeros of psi~_{N+1}; weight: Christoffel number".into()];
    Ok(Document {
        params: base_params(cfg),
        command: "roots".into(),
        rows: t,
        report: None,
        notes,
    })
}

pub fn as_compare(cfg: &RunConfig) -> Result<Document, CliError> {
    let params = &cfg.params;
    let h_as = eigh_hermitian(build_h_as(params)?.matrix())?;
    let h = build_tilde_operators(params)?.h;
    let big = params.n() as f64;
    let mut t = Table::new(&[
        "n",
        "lambda_as",
        "level",
        "lambda_tilde",
        "from_relation",
        "residual",
    ]);
    for n in 0..params.dim() {
        let l_as = h_as.eigenvalues[n];
        let lt = h.matrix()[(n, n)].re;
        let rel = -(l_as - 0.5).powi(2) + big * l_as;
        t.push(vec![
            n.into(),
            l_as.into(),
            (n as f64 + 0.5).into(),
            lt.into(),
            rel.into(),
            (lt - rel).abs().into(),
        ]);
    }
    let r = relation_check(params)?;
    let report = CheckReport::new(vec![
        CheckEntry::new("intertwiner_unitary", r.unitarity, 1e-10),
        CheckEntry::new("intertwiner_diagonal", r.diagonal.max(r.intertwining), 1e-9),
        CheckEntry::new("spectral_relation", r.matrix.max(r.scalar), 1e-8),
    ]);
    Ok(Document {
        params: base_params(cfg),
        command: "as-compare".into(),
        rows: t,
        report: Some(report),
        notes: vec![],
    })
}

fn entry_rows(t: &mut Table, params: &Params, report: &CheckReport) {
    for e in &report.entries {
        t.push(vec![
            params.p().into(),
            params.n().into(),
            e.name.as_str().into(),
            e.max_residual.into(),
            e.tolerance.into(),
            e.pass.into(),
        ]);
    }
}

pub fn check(cfg: &RunConfig) -> Result<Document, CliError> {
    let mut t = Table::new(&["p", "N", "name", "max_residual", "tolerance", "pass"]);
    let (params, report) = if cfg.sweep {
        let results = run_sweep(&sweep_grid())?;
        for (p, r) in &results {
            entry_rows(&mut t, p, r);
        }
        let reports: Vec<CheckReport> = results.into_iter().map(|(_, r)| r).collect();
        (
            json!({ "p": SWEEP_P, "N": SWEEP_N, "sweep": true }),
            CheckReport::merge(&reports),
        )
    } else {
        let r = run_suite(&cfg.params)?;
        entry_rows(&mut t, &cfg.params, &r);
        (base_params(cfg), r)
    };
    Ok(Document {
        params,
        command: "check".into(),
        rows: t,
        report: Some(report),
        notes: vec![],
    })
}
