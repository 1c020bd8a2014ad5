use nphoton_core::distributions::transition_photon_number;
use nphoton_core::media::{air_beta, fused_silica, reference_air, AirModel};
use serde::Serialize;

use super::{Context, Outcome};
use crate::args::TransitionArgs;
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::setup;

#[derive(Debug, Serialize)]
pub struct TransitionReport {
    pub transition_n: f64,
    /// fs²
    pub dispersion: f64,
    /// Fused silica with the same |B|, cm.
    pub silica_cm: f64,
    /// Air with the same |B|, m.
    pub air_m: f64,
}

pub fn run(args: &TransitionArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let preset = args.preset.map(|p| p.values()).unwrap_or_default();
    let mut params = Parameters::default();
    if let Some(p) = args.preset {
        params.insert_plain("preset", p.name());
    }
    let spectrum = setup::spectrum(&args.spectrum, &preset, &mut params)?;
    let paths = setup::paths(&args.paths, &preset, &mut params)?;
    let b = paths.dispersion_sum();
    let transition_n = transition_photon_number(spectrum.sigma_phi, b)?;
    let beta_air = air_beta(AirModel::Owens, &reference_air())?;
    let report = TransitionReport {
        transition_n,
        dispersion: b,
        silica_cm: b.abs() / fused_silica().beta,
        air_m: b.abs() / beta_air / 100.0,
    };

    let written = ctx.write_json("transition.json", &report)?;
    ctx.finish("transition", params, vec![written])?;
    let lines = [
        ("N_transition", report.transition_n.to_string()),
        ("B (fs^2)", report.dispersion.to_string()),
        ("fused silica (cm)", report.silica_cm.to_string()),
        ("air, 15 C 20% RH (m)", report.air_m.to_string()),
    ];
    Ok(Outcome::success(ctx.render(&report, &lines)?))
}
