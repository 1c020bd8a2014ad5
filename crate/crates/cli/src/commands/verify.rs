//! Verification suites. Every case reports its metric and tolerance; a case
//! that errors (for example on convergence) is a failed case, not an abort.

use nphoton_core::distributions::{classical_width, quantum_distribution};
use nphoton_core::montecarlo::{log_log_slope, sample_classical, sample_quantum, SamplerConfig};
use nphoton_core::oracle::{Oracle, QuadratureSpec, VerificationReport};
use nphoton_core::{GaussianSpectrum, PathPair, StateSpec};
use serde::Serialize;

use super::{Context, Outcome};
use crate::args::{Suite, VerifyArgs};
use crate::error::{CliError, EXIT_VERIFICATION};
use crate::manifest::Parameters;
use crate::presets::SIGMA_PHI_RAD_PER_S;

pub const GRID_TOLERANCE: f64 = 1e-6;
pub const CANCELLATION_TOLERANCE: f64 = 1e-8;
pub const SLOPE_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCase {
    pub name: String,
    pub pass: bool,
    pub metric: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub cases: Vec<VerifyCase>,
}

fn measured(name: String, metric: f64, tolerance: f64) -> VerifyCase {
    VerifyCase {
        name,
        pass: metric < tolerance,
        metric: Some(metric),
        tolerance,
        error: None,
        report: None,
    }
}

fn failed(name: String, tolerance: f64, err: impl std::fmt::Display) -> VerifyCase {
    VerifyCase {
        name,
        pass: false,
        metric: None,
        tolerance,
        error: Some(err.to_string()),
        report: None,
    }
}

/// 41 points spanning ±5σ about the mean.
pub fn tau_grid(mean: f64, sigma: f64) -> Vec<f64> {
    (0..41)
        .map(|k| mean + sigma * (-5.0 + 0.25 * k as f64))
        .collect()
}

fn grid_case(
    oracle: &Oracle,
    name: String,
    state: &StateSpec,
    spectrum: &GaussianSpectrum,
    paths: &PathPair,
    tolerance: f64,
) -> VerifyCase {
    let run = || -> nphoton_core::Result<VerificationReport> {
        let dist = quantum_distribution(state, spectrum, paths)?;
        oracle.verify_closed_form(state, spectrum, paths, &tau_grid(dist.mean, dist.sigma))
    };
    match run() {
        Ok(report) => VerifyCase {
            report: Some(report.clone()),
            ..measured(name, report.max_rel_err, tolerance)
        },
        Err(err) => failed(name, tolerance, err),
    }
}

fn quadrature_suite(
    args: &VerifyArgs,
    spectrum: &GaussianSpectrum,
) -> Result<Vec<VerifyCase>, CliError> {
    let oracle = Oracle::new(QuadratureSpec {
        max_points: args.max_points,
        rel_tol: args.rel_tol,
        ..QuadratureSpec::default()
    })?;
    let mut cases = Vec::new();
    for (kind, make) in [
        (
            "anti",
            StateSpec::anti_correlated as fn(u64) -> nphoton_core::Result<StateSpec>,
        ),
        ("corr", StateSpec::correlated),
        ("coherent", |n| StateSpec::coherent(n, 0.8, 1.3)),
    ] {
        for n in [1, 3, 10, 100] {
            for b in [0.0, 500.0, 1e5] {
                let paths = PathPair::from_totals(40.0, b, 15.0, 0.0)?;
                cases.push(grid_case(
                    &oracle,
                    format!("grid/{kind}/N={n}/B={b}"),
                    &make(n)?,
                    spectrum,
                    &paths,
                    GRID_TOLERANCE,
                ));
            }
        }
    }

    let cancelled = PathPair::from_totals(20.0, 2500.0, 0.0, -2500.0)?;
    cases.push(grid_case(
        &oracle,
        "cancellation/N=10".into(),
        &StateSpec::anti_correlated(10)?,
        spectrum,
        &cancelled,
        CANCELLATION_TOLERANCE,
    ));

    let n = 5;
    let shifted = PathPair::from_totals(100.0, 0.0, 0.0, 0.0)?;
    let expected = 1.0 / (2f64.sqrt() * spectrum.sigma_phi * n as f64);
    match oracle.numeric_moments(&StateSpec::anti_correlated(n)?, spectrum, &shifted) {
        Ok(m) => {
            cases.push(measured(
                "moments/N=5/sigma".into(),
                (m.sigma - expected).abs() / expected,
                GRID_TOLERANCE,
            ));
            cases.push(measured(
                "moments/N=5/mean_fs".into(),
                (m.mean - 100.0).abs(),
                1e-6,
            ));
            cases.push(measured(
                "moments/N=5/skew".into(),
                m.third_central.abs() / m.sigma.powi(3),
                1e-8,
            ));
        }
        Err(err) => cases.push(failed("moments/N=5".into(), GRID_TOLERANCE, err)),
    }
    Ok(cases)
}

fn montecarlo_suite(
    args: &VerifyArgs,
    spectrum: &GaussianSpectrum,
) -> Result<Vec<VerifyCase>, CliError> {
    let sigma = spectrum.sigma_phi;
    let mut cases = Vec::new();

    // Each case draws from its own seed so their fluctuations are independent.
    for (k, (n, b)) in [(10u64, 500.0), (1_000_000, 1e5)].into_iter().enumerate() {
        let dist = quantum_distribution(
            &StateSpec::anti_correlated(n)?,
            spectrum,
            &PathPair::from_totals(25.0, b, 0.0, 0.0)?,
        )?;
        let cfg = SamplerConfig::new(args.seed.wrapping_add(k as u64), args.samples, n)?;
        let est = sample_quantum(&dist, &cfg)?;
        cases.push(measured(
            format!("quantum/N={n}/B={b}/sigma_in_se"),
            (est.sigma_hat - dist.sigma).abs() / est.standard_error,
            3.0,
        ));
        cases.push(measured(
            format!("quantum/N={n}/B={b}/mean_in_se"),
            (est.mean_hat - dist.mean).abs() / est.mean_standard_error,
            3.0,
        ));
        let again = sample_quantum(&dist, &cfg)?;
        let same = again.sigma_hat.to_bits() == est.sigma_hat.to_bits()
            && again.mean_hat.to_bits() == est.mean_hat.to_bits();
        cases.push(measured(
            format!("quantum/N={n}/B={b}/determinism"),
            if same { 0.0 } else { 1.0 },
            0.5,
        ));
    }

    let sigma_t = classical_width(sigma, 500.0, 0.0)?;
    let ns = [1u64, 10, 100, 1000];
    let mut widths = Vec::new();
    for (k, &n) in ns.iter().enumerate() {
        let cfg = SamplerConfig::new(args.seed.wrapping_add(10 + k as u64), args.samples, n)?;
        let est = sample_classical(sigma_t, &cfg)?;
        let expected = sigma_t / (n as f64).sqrt();
        cases.push(measured(
            format!("classical/N={n}/sigma_in_se"),
            (est.sigma_hat - expected).abs() / est.standard_error,
            3.0,
        ));
        widths.push(est.sigma_hat);
    }
    let x: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = log_log_slope(&x, &widths)?;
    cases.push(measured(
        "classical/slope".into(),
        (slope + 0.5).abs(),
        SLOPE_TOLERANCE,
    ));
    Ok(cases)
}

pub fn run(args: &VerifyArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let spectrum = GaussianSpectrum::from_width_rad_per_s(
        nphoton_core::units::wavelength_nm_to_omega(800.0),
        SIGMA_PHI_RAD_PER_S,
    )?;
    let mut params = Parameters::default();
    params.insert_plain(
        "suite",
        serde_json::to_value(args.suite).expect("plain enum"),
    );
    params.insert_plain("seed", args.seed);
    params.insert_plain("max_points", args.max_points);
    params.insert_plain("rel_tol", args.rel_tol);
    params.insert_plain("samples", args.samples);
    params.insert("sigma_phi", SIGMA_PHI_RAD_PER_S, "rad/s");

    let mut cases = Vec::new();
    if matches!(args.suite, Suite::Quadrature | Suite::All) {
        cases.extend(quadrature_suite(args, &spectrum)?);
    }
    if matches!(args.suite, Suite::Montecarlo | Suite::All) {
        cases.extend(montecarlo_suite(args, &spectrum)?);
    }
    let report = VerifyReport {
        suite: args.suite,
        seed: args.seed,
        pass: cases.iter().all(|c| c.pass),
        cases,
    };

    let written = ctx.write_json("verify.json", &report)?;
    ctx.finish("verify", params, vec![written])?;

    let lines: Vec<(&str, String)> = report
        .cases
        .iter()
        .map(|c| {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let detail = match (&c.metric, &c.error) {
                (_, Some(err)) => err.clone(),
                (Some(m), None) => format!("{m:.3e} (tolerance {:e})", c.tolerance),
                (None, None) => String::new(),
            };
            (c.name.as_str(), format!("{status}  {detail}"))
        })
        .collect();
    let stdout = ctx.render(&report, &lines)?;
    Ok(Outcome {
        stdout,
        code: if report.pass { 0 } else { EXIT_VERIFICATION },
    })
}
