use nphoton_core::distributions::quantum_classical_ratio;
use nphoton_core::{PathPair, StateSpec};
use serde::Serialize;

use super::scan::log_spaced;
use super::{Context, Outcome};
use crate::args::{Clip, Range, SurfaceArgs};
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::setup;

fn linear(range: Range, points: usize) -> Result<Vec<f64>, CliError> {
    if !(range.lo >= 0.0 && range.lo <= range.hi) {
        return Err(CliError::usage(format!(
            "x range {}:{} must satisfy 0 <= lo <= hi",
            range.lo, range.hi
        )));
    }
    if range.lo == range.hi {
        return Ok(vec![range.lo]);
    }
    if points < 2 {
        return Err(CliError::usage(
            "a range with distinct ends needs at least 2 points",
        ));
    }
    let step = (range.hi - range.lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| {
            if k == points - 1 {
                range.hi
            } else {
                range.lo + step * k as f64
            }
        })
        .collect())
}

fn photon_numbers(range: Range, points: usize) -> Result<Vec<u64>, CliError> {
    let whole = |v: f64| v >= 1.0 && v.fract() == 0.0 && v <= 1e15;
    if !(whole(range.lo) && whole(range.hi)) {
        return Err(CliError::usage(format!(
            "N range {}:{} needs positive integer bounds",
            range.lo, range.hi
        )));
    }
    log_spaced(range.lo as u64, range.hi as u64, points)
}

#[derive(Debug, Serialize)]
struct SurfaceSummary {
    rows: usize,
    above_unity: usize,
    csv: String,
}

pub fn run(args: &SurfaceArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let preset = args.preset.map(|p| p.values()).unwrap_or_default();
    let mut params = Parameters::default();
    if let Some(p) = args.preset {
        params.insert_plain("preset", p.name());
    }
    let spectrum = setup::spectrum(&args.spectrum, &preset, &mut params)?;
    let n_range = args
        .n_range
        .or(preset.n_range)
        .ok_or_else(|| CliError::usage("--n-range is required"))?;
    let x_range = args
        .x_range
        .or(preset.x_range)
        .ok_or_else(|| CliError::usage("--x-range is required"))?;
    let n_points = args.n_points.or(preset.n_points).unwrap_or(31);
    let x_points = args.x_points.or(preset.x_points).unwrap_or(21);
    let clip = args.clip.or(preset.clip).unwrap_or(Clip::None);
    let material = setup::material(&args.material)?;
    params.insert_plain("n_range", format!("{}:{}", n_range.lo, n_range.hi));
    params.insert("x_range", format!("{}:{}", x_range.lo, x_range.hi), "cm");
    params.insert_plain("n_points", n_points);
    params.insert_plain("x_points", x_points);
    params.insert_plain("material", material.label.clone());
    params.insert_plain("clip", serde_json::to_value(clip).expect("plain enum"));

    let ns = photon_numbers(n_range, n_points)?;
    let xs = linear(x_range, x_points)?;
    let mut header = vec!["N", "x_cm", "R"];
    if clip == Clip::Unity {
        header.push("R_raw");
    }

    let mut rows = Vec::with_capacity(ns.len() * xs.len());
    let mut above_unity = 0;
    for &x in &xs {
        let paths = PathPair::new(vec![material.segment(x)?], vec![]);
        for &n in &ns {
            let r = quantum_classical_ratio(&StateSpec::anti_correlated(n)?, &spectrum, &paths)?;
            if r > 1.0 {
                above_unity += 1;
            }
            let mut row = vec![n.to_string(), x.to_string()];
            match clip {
                Clip::None => row.push(r.to_string()),
                Clip::Unity => {
                    row.push(r.max(1.0).to_string());
                    row.push(r.to_string());
                }
            }
            rows.push(row);
        }
    }

    let csv = ctx.write_csv("surface.csv", &header, &rows)?;
    ctx.finish("surface", params, vec![csv.clone()])?;
    let summary = SurfaceSummary {
        rows: rows.len(),
        above_unity,
        csv,
    };
    let lines = [
        ("rows", summary.rows.to_string()),
        ("cells with R > 1", summary.above_unity.to_string()),
        ("csv", summary.csv.clone()),
    ];
    Ok(Outcome::success(ctx.render(&summary, &lines)?))
}
