use nphoton_core::distributions::{
    asymptotic_width, classical_shot_noise, classical_width, quantum_distribution,
    transition_photon_number,
};
use nphoton_core::StateSpec;
use serde::Serialize;

use super::{Context, Outcome};
use crate::args::{StateArg, WidthArgs};
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::setup;

#[derive(Debug, Serialize)]
pub struct WidthReport {
    pub state: StateArg,
    pub variable: &'static str,
    pub n_photons: u64,
    /// fs²
    pub dispersion: f64,
    /// fs
    pub mean: f64,
    /// fs
    pub sigma_q: f64,
    /// fs
    pub sigma_t: f64,
    /// fs
    pub sigma_c: f64,
    pub ratio: f64,
    /// fs
    pub asymptote: f64,
    pub transition_n: Option<f64>,
    pub amplitude_scale: f64,
}

pub fn run(args: &WidthArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let preset = args.preset.map(|p| p.values()).unwrap_or_default();
    let mut params = Parameters::default();
    if let Some(p) = args.preset {
        params.insert_plain("preset", p.name());
    }
    let spectrum = setup::spectrum(&args.spectrum, &preset, &mut params)?;
    let paths = setup::paths(&args.paths, &preset, &mut params)?;
    let n = args
        .n
        .or(preset.n)
        .ok_or_else(|| CliError::usage("--n is required"))?;
    params.insert_plain("n", n);
    params.insert_plain(
        "state",
        serde_json::to_value(args.state).expect("plain enum"),
    );

    let state = match args.state {
        StateArg::Anti => StateSpec::anti_correlated(n)?,
        StateArg::Corr => StateSpec::correlated(n)?,
        StateArg::Coherent => {
            params.insert_plain("v", args.v);
            params.insert_plain("u", args.u);
            StateSpec::coherent(n, args.v, args.u)?
        }
    };

    let sigma = spectrum.sigma_phi;
    let dist = quantum_distribution(&state, &spectrum, &paths)?;
    let b = paths.dispersion_sum();
    let sigma_t = classical_width(
        sigma,
        paths.path1_coefficients().beta_x,
        paths.path2_coefficients().beta_x,
    )?;
    let sigma_c = classical_shot_noise(sigma_t, n)?;
    let report = WidthReport {
        state: args.state,
        variable: dist.variable.short_name(),
        n_photons: n,
        dispersion: b,
        mean: dist.mean,
        sigma_q: dist.sigma,
        sigma_t,
        sigma_c,
        ratio: dist.sigma / sigma_c,
        asymptote: asymptotic_width(sigma, b),
        transition_n: transition_photon_number(sigma, b).ok(),
        amplitude_scale: dist.amplitude_scale,
    };

    let written = ctx.write_json("width.json", &report)?;
    ctx.finish("width", params, vec![written])?;

    let lines = [
        ("state", format!("{:?}", args.state).to_lowercase()),
        ("variable", report.variable.to_string()),
        ("N", n.to_string()),
        ("B (fs^2)", report.dispersion.to_string()),
        ("mean (fs)", report.mean.to_string()),
        ("sigma_Q (fs)", report.sigma_q.to_string()),
        ("sigma_T (fs)", report.sigma_t.to_string()),
        ("sigma_C (fs)", report.sigma_c.to_string()),
        ("R = sigma_Q/sigma_C", report.ratio.to_string()),
        ("asymptote (fs)", report.asymptote.to_string()),
        (
            "N_transition",
            report
                .transition_n
                .map_or_else(|| "none (B = 0)".to_string(), |v| v.to_string()),
        ),
        ("amplitude scale", report.amplitude_scale.to_string()),
    ];
    Ok(Outcome::success(ctx.render(&report, &lines)?))
}
