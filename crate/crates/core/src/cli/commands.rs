use serde_json::json;

use crate::dynamics::{
    bifurcation_scan, chaotic_fraction, iterate_orbit, lyapunov_scan, Control, MapParams, ScanSpec, StartPolicy,
    StepRule,
};
use crate::fieldeq::{
    el_vs_operator_check, ode_residual_1d, pde_residual_2d, self_adjointness_ladder, spherical_residual,
    AdjointVersion, FieldParams,
};
use crate::malgebra::fuzz::axiom_fuzz;
use crate::mfourier::{m_fourier_coefficients, GramMatrix, IndexRange, Pairing};
use crate::numcore::{PeriodicGrid, Tolerance};
use crate::Complex64;

use super::config::{parse_f64, parse_interval, Range, RunConfig, Value};
use super::output::{Cell, Report};
use super::CliError;

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command.as_str() {
        "bifurcate" => bifurcate(cfg),
        "lyapunov" => lyapunov(cfg),
        "orbit" => orbit(cfg),
        "gram" => gram(cfg),
        "fourier" => fourier(cfg),
        "residual" => residual(cfg),
        "axioms" => axioms(cfg),
        other => Err(CliError::Config(format!("unknown command `{other}`"))),
    }
}

fn rule(cfg: &RunConfig) -> Result<StepRule, CliError> {
    let name = cfg.get("map")?;
    StepRule::parse(name).ok_or_else(|| CliError::Config(format!("unknown map `{name}`")))
}

const MAP_KEYS: [&str; 5] = ["q", "phi", "alpha", "q1", "mu"];

/// Map parameters with the swept one (if any) set to its range start.
fn map_params(cfg: &RunConfig) -> Result<(MapParams, Option<(Control, Range)>), CliError> {
    let mut p = MapParams::default();
    let mut sweep = None;
    for key in MAP_KEYS {
        let control = Control::parse(key).expect("map keys are controls");
        match cfg.value(key)? {
            Value::Scalar(v) => p = control.set(&p, v),
            Value::Sweep(r) => {
                if sweep.is_some() {
                    return Err(CliError::Config("only one parameter may be a range".into()));
                }
                p = control.set(&p, r.low);
                sweep = Some((control, r));
            }
        }
    }
    Ok((p, sweep))
}

fn scan_spec(cfg: &RunConfig) -> Result<ScanSpec, CliError> {
    let rule = rule(cfg)?;
    let (params, sweep) = map_params(cfg)?;
    let (control, range) =
        sweep.ok_or_else(|| CliError::Config("one of q, phi, alpha, q1, mu must be a low:high:count range".into()))?;
    let mut spec = ScanSpec::new(params, control, range.low, range.high, range.count, rule);
    let start = cfg.get("start")?;
    spec.start = match start {
        "default" => StartPolicy::RuleDefault,
        s if s.starts_with("random") => {
            let [low, high] = parse_interval("start", s.trim_start_matches("random").trim_start_matches(':'))?;
            StartPolicy::Random {
                seed: cfg.seed,
                low,
                high,
            }
        }
        s => StartPolicy::Fixed(parse_f64("start", s)?),
    };
    Ok(spec)
}

fn bifurcate(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut spec = scan_spec(cfg)?;
    spec.n_transient = cfg.usize("transient")?;
    spec.n_keep = cfg.usize("keep")?;
    spec.tol = Tolerance::absolute(cfg.f64("tol")?)?;
    let diagram = bifurcation_scan(&spec)?;
    let mut report = Report::new(vec!["control_value", "sample_index", "state", "branch_count"]);
    for ((c, samples), branches) in diagram
        .control_values
        .iter()
        .zip(&diagram.attractor_samples)
        .zip(&diagram.branch_counts)
    {
        if samples.is_empty() {
            report.push(vec![(*c).into(), Cell::Empty, Cell::Empty, (*branches).into()]);
        }
        for (j, x) in samples.iter().enumerate() {
            report.push(vec![(*c).into(), j.into(), (*x).into(), (*branches).into()]);
        }
    }
    report.note("control", spec.control.name());
    report.note("max_branch_count", diagram.max_branch_count());
    report.note("diverged_cells", diagram.branch_counts.iter().filter(|b| **b == 0).count());
    Ok(report)
}

fn lyapunov(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = scan_spec(cfg)?;
    let exponents = lyapunov_scan(&spec, cfg.usize("iterations")?)?;
    let mut report = Report::new(vec!["control_value", "lambda"]);
    for (c, lam) in &exponents {
        report.push(vec![(*c).into(), (*lam).into()]);
    }
    let max = exponents.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
    report.note("control", spec.control.name());
    report.note("chaotic_fraction", chaotic_fraction(&exponents));
    report.note("max_lambda", if max.is_finite() { json!(max) } else { json!(max.to_string()) });
    Ok(report)
}

fn orbit(cfg: &RunConfig) -> Result<Report, CliError> {
    let rule = rule(cfg)?;
    let (p, sweep) = map_params(cfg)?;
    if sweep.is_some() {
        return Err(CliError::Config("orbit takes scalar parameters only".into()));
    }
    let x0 = match cfg.get("x0")? {
        "default" => rule.default_start(),
        s => parse_f64("x0", s)?,
    };
    let transient = cfg.usize("transient")?;
    let orbit = iterate_orbit(x0, &p, rule, transient, cfg.usize("steps")?)?;
    let mut report = Report::new(vec!["step", "state"]);
    for (j, x) in orbit.samples.iter().enumerate() {
        report.push(vec![(transient + j + 1).into(), (*x).into()]);
    }
    report.note("x0", x0);
    report.note("diverged", orbit.diverged);
    report.note("diverged_at", orbit.diverged_at);
    Ok(report)
}

fn index_range(cfg: &RunConfig) -> Result<IndexRange, CliError> {
    let raw = cfg.get("range")?;
    let bad = || CliError::Config(format!("`range` must be min:max integers, got `{raw}`"));
    let (lo, hi) = raw.split_once(':').ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    Ok(IndexRange::new(lo, hi)?)
}

fn gram(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = cfg.f64("alpha")?;
    let name = cfg.get("pairing")?;
    let pairing = Pairing::parse(name).ok_or_else(|| CliError::Config(format!("unknown pairing `{name}`")))?;
    let grid = PeriodicGrid::new(cfg.usize("nodes")?)?;
    let range = index_range(cfg)?;
    let matrix = GramMatrix::build(range, alpha, pairing, &grid)?;
    let mut report = Report::new(vec!["n", "m", "re", "im", "claim_re", "claim_im", "delta"]);
    let mut worst: f64 = 0.0;
    for n in range.indices() {
        for m in range.indices() {
            let v = matrix.entry(n, m);
            let row = match matrix.claimed_entry(n, m) {
                Some(c) => {
                    let delta = (v - c).norm();
                    worst = worst.max(delta);
                    vec![n.into(), m.into(), v.re.into(), v.im.into(), c.re.into(), c.im.into(), delta.into()]
                }
                None => vec![n.into(), m.into(), v.re.into(), v.im.into(), Cell::Empty, Cell::Empty, Cell::Empty],
            };
            report.push(row);
        }
    }
    report.note("pairing", pairing.name());
    report.note("max_delta", worst);
    Ok(report)
}

fn test_function(name: &str) -> Result<fn(f64) -> Complex64, CliError> {
    Ok(match name {
        "cos" => |t: f64| Complex64::new(t.cos(), 0.0),
        "inv_two_minus_cos" => |t: f64| Complex64::new(1.0 / (2.0 - t.cos()), 0.0),
        "exp_cos" => |t: f64| Complex64::new(t.cos().exp(), 0.0),
        "one" => |_| Complex64::new(1.0, 0.0),
        other => return Err(CliError::Config(format!("unknown test function `{other}`"))),
    })
}

fn fourier(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = cfg.f64("alpha")?;
    let f = test_function(cfg.get("f")?)?;
    let trunc = cfg.i32("trunc")?;
    if trunc < 1 {
        return Err(CliError::Config(format!("`trunc` must be at least 1, got {trunc}")));
    }
    let grid = PeriodicGrid::new(cfg.usize("nodes")?)?;
    let coeffs = m_fourier_coefficients(f, IndexRange::symmetric(trunc), alpha, &grid)?;
    let synthesis = coeffs.synthesis()?;
    let mut report = Report::new(vec!["n", "a_re", "a_im", "weight_re", "weight_im"]);
    for ((n, a), c) in coeffs.range.indices().zip(&coeffs.values).zip(&synthesis.weights) {
        report.push(vec![n.into(), a.re.into(), a.im.into(), c.re.into(), c.im.into()]);
    }
    report.note("reconstruction_error", synthesis.relative_error(f, &grid));
    report.note("condition", synthesis.condition);
    Ok(report)
}

fn residual(cfg: &RunConfig) -> Result<Report, CliError> {
    let alpha = cfg.f64("alpha")?;
    let p = FieldParams::slice(cfg.f64("mu0")?, cfg.f64("mu1")?, alpha)?;
    let ladder_raw = cfg.get("ladder")?;
    let ladder = ladder_raw
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Config(format!("`ladder` must list node counts, got `{ladder_raw}`")))?;
    let extent = parse_interval("extent", cfg.get("extent")?)?;
    let which = cfg.get("which")?;
    let report = match which {
        "ode1d" => ode_residual_1d(&p, parse_interval("z_range", cfg.get("z_range")?)?, &ladder)?,
        "pde2d" => pde_residual_2d(&p, [extent, extent], &ladder)?,
        "spherical" => spherical_residual(&p, cfg.f64("q1")?, parse_interval("r_range", cfg.get("r_range")?)?, &ladder)?,
        "el" => el_vs_operator_check(&p, cfg.i32("sign")?, cfg.seed, [extent, extent], &ladder)?,
        "adjoint" => {
            let name = cfg.get("version")?;
            let version =
                AdjointVersion::parse(name).ok_or_else(|| CliError::Config(format!("unknown version `{name}`")))?;
            self_adjointness_ladder(&p, version, cfg.seed, cfg.seed.wrapping_add(1), [extent, extent], &ladder)?
        }
        other => return Err(CliError::Config(format!("unknown residual `{other}`"))),
    };
    let mut out = Report::new(vec!["spacing", "residual_norm", "excluded_nodes"]);
    for ((h, r), e) in report.spacings.iter().zip(&report.residual_norms).zip(&report.excluded_nodes) {
        out.push(vec![(*h).into(), (*r).into(), (*e).into()]);
    }
    out.note("which", which);
    out.note("fitted_order", report.fitted_order);
    out.note("report", serde_json::to_value(&report).map_err(|e| CliError::Config(e.to_string()))?);
    Ok(out)
}

fn axioms(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = axiom_fuzz(cfg.f64("alpha")?, cfg.usize("samples")?, cfg.seed)?;
    let mut out = Report::new(vec!["check", "max_violation"]);
    for (name, v) in [
        ("m_mul_identity", r.m_mul_identity_max),
        ("m_mul_inverse", r.m_mul_inverse_max),
        ("m_mul_associativity", r.m_mul_associativity_max),
        ("m_mul_commutativity", r.m_mul_commutativity_max),
        ("pullback_identity", r.pullback_identity_max),
        ("pullback_associativity", r.pullback_associativity_max),
        ("pullback_commutativity", r.pullback_commutativity_max),
        ("circle_law", r.circle_law_max),
        ("mismatch", r.mismatch_max),
    ] {
        out.push(vec![name.into(), v.into()]);
    }
    out.note("max_violation", r.max_violation());
    out.note("mismatch_mean", r.mismatch_mean);
    out.note("report", serde_json::to_value(&r).map_err(|e| CliError::Config(e.to_string()))?);
    Ok(out)
}
