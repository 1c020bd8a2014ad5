use nphoton_core::media::{air_beta, equivalent_air_length, fused_silica, AirModel};
use nphoton_core::AirConditions;
use serde::Serialize;

use super::{Context, Outcome};
use crate::args::{MediaArgs, ModelArg};
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::setup;

#[derive(Debug, Serialize)]
pub struct MediaReport {
    pub material: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelArg>,
    /// fs²/cm
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_minus_1: Option<f64>,
    /// Length of this material with the dispersion of 1 cm of fused silica, cm.
    pub per_cm_silica: f64,
    /// Air (reference conditions) equivalent to 1 cm of fused silica, m.
    pub air_per_cm_silica: f64,
    pub source: String,
}

pub fn run(args: &MediaArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let mut params = Parameters::default();
    params.insert_plain("material", args.material.clone());
    let silica_beta = fused_silica().beta;
    let report = if args.material == "air" {
        let conditions =
            AirConditions::new(args.temperature, args.pressure, args.rh, args.wavelength)?;
        params.insert_plain(
            "model",
            serde_json::to_value(args.model).expect("plain enum"),
        );
        params.insert("wavelength", args.wavelength, "nm");
        params.insert("temperature", args.temperature, "degC");
        params.insert("pressure", args.pressure, "Pa");
        params.insert("rh", args.rh, "fraction");
        let model = match args.model {
            ModelArg::Edlen => AirModel::Edlen,
            ModelArg::Owens => AirModel::Owens,
        };
        let beta = air_beta(model, &conditions)?;
        MediaReport {
            material: "air".into(),
            model: Some(args.model),
            beta,
            n_minus_1: Some(model.refractivity(&conditions)?),
            per_cm_silica: silica_beta / beta,
            air_per_cm_silica: equivalent_air_length(1.0)?,
            source: match model {
                AirModel::Edlen => "Edlen 1966, dry air".into(),
                AirModel::Owens => "Owens 1967, dry air plus water vapour".into(),
            },
        }
    } else {
        let material = setup::material(&args.material)?;
        MediaReport {
            material: material.label.clone(),
            model: None,
            beta: material.beta,
            n_minus_1: None,
            per_cm_silica: silica_beta / material.beta,
            air_per_cm_silica: equivalent_air_length(1.0)?,
            source: material.source.clone(),
        }
    };

    let written = ctx.write_json("media.json", &report)?;
    ctx.finish("media", params, vec![written])?;
    let mut lines = vec![("material", report.material.clone())];
    if let Some(model) = report.model {
        lines.push(("model", format!("{model:?}").to_lowercase()));
    }
    lines.push(("beta (fs^2/cm)", report.beta.to_string()));
    if let Some(n1) = report.n_minus_1 {
        lines.push(("n - 1", n1.to_string()));
    }
    lines.push(("cm per cm of silica", report.per_cm_silica.to_string()));
    lines.push((
        "air m per cm of silica",
        report.air_per_cm_silica.to_string(),
    ));
    lines.push(("source", report.source.clone()));
    Ok(Outcome::success(ctx.render(&report, &lines)?))
}
