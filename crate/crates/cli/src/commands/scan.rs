use nphoton_core::distributions::{classical_shot_noise, classical_width, quantum_width};
use serde::Serialize;

use super::{Context, Outcome};
use crate::args::ScanArgs;
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::setup;

pub const HEADER: [&str; 3] = ["N", "p_quantum", "p_classical"];

/// `points` log-spaced integers from `lo` to `hi` inclusive, rounded and
/// deduplicated.
pub fn log_spaced(lo: u64, hi: u64, points: usize) -> Result<Vec<u64>, CliError> {
    if lo > hi {
        return Err(CliError::usage(format!("empty range: {lo} > {hi}")));
    }
    if lo == hi {
        return Ok(vec![lo]);
    }
    if points < 2 {
        return Err(CliError::usage(
            "a range with distinct ends needs at least 2 points",
        ));
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut values: Vec<u64> = (0..points)
        .map(|k| match k {
            0 => lo,
            k if k == points - 1 => hi,
            k => (a + (b - a) * k as f64 / (points - 1) as f64).exp().round() as u64,
        })
        .collect();
    values.dedup();
    Ok(values)
}

#[derive(Debug, Serialize)]
struct ScanSummary {
    rows: usize,
    csv: String,
}

pub fn run(args: &ScanArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let preset = args.preset.map(|p| p.values()).unwrap_or_default();
    let mut params = Parameters::default();
    if let Some(p) = args.preset {
        params.insert_plain("preset", p.name());
    }
    let spectrum = setup::spectrum(&args.spectrum, &preset, &mut params)?;
    let paths = setup::paths(&args.paths, &preset, &mut params)?;
    let n_min = args.n_min.or(preset.n_min).unwrap_or(1);
    let n_max = args
        .n_max
        .or(preset.n_max)
        .ok_or_else(|| CliError::usage("--n-max is required"))?;
    let points = args.points.or(preset.points).unwrap_or(41);
    params.insert_plain("n_min", n_min);
    params.insert_plain("n_max", n_max);
    params.insert_plain("points", points);

    let sigma = spectrum.sigma_phi;
    let b = paths.dispersion_sum();
    let sigma_t = classical_width(
        sigma,
        paths.path1_coefficients().beta_x,
        paths.path2_coefficients().beta_x,
    )?;
    let rows = log_spaced(n_min, n_max, points)?
        .into_iter()
        .map(|n| {
            let q = quantum_width(sigma, n, b)?;
            let c = classical_shot_noise(sigma_t, n)?;
            Ok(vec![
                n.to_string(),
                (sigma * q).to_string(),
                (sigma * c).to_string(),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let csv = ctx.write_csv("scan.csv", &HEADER, &rows)?;
    ctx.finish("scan", params, vec![csv.clone()])?;
    let summary = ScanSummary {
        rows: rows.len(),
        csv,
    };
    let lines = [
        ("rows", summary.rows.to_string()),
        ("csv", summary.csv.clone()),
    ];
    Ok(Outcome::success(ctx.render(&summary, &lines)?))
}
