//! Turns flags and presets into core types.

use nphoton_core::media::{air_beta, catalog, reference_air, AirModel, Material};
use nphoton_core::units::wavelength_nm_to_omega;
use nphoton_core::{GaussianSpectrum, MediumSegment, PathPair};

use crate::args::{PathArgs, SegmentSpec, SpectrumArgs};
use crate::error::CliError;
use crate::manifest::Parameters;
use crate::presets::PresetValues;

pub fn spectrum(
    args: &SpectrumArgs,
    preset: &PresetValues,
    params: &mut Parameters,
) -> Result<GaussianSpectrum, CliError> {
    let sigma_phi = args
        .sigma_phi
        .or(preset.sigma_phi)
        .ok_or_else(|| CliError::usage("--sigma-phi (rad/s) is required"))?;
    params.insert("sigma_phi", sigma_phi, "rad/s");
    params.insert("wavelength", args.wavelength, "nm");
    Ok(GaussianSpectrum::from_width_rad_per_s(
        wavelength_nm_to_omega(args.wavelength),
        sigma_phi,
    )?)
}

/// Catalog lookup accepting `silica` for `fused_silica`.
pub fn material(name: &str) -> Result<&'static Material, CliError> {
    let key = if name == "silica" {
        "fused_silica"
    } else {
        name
    };
    Ok(catalog().get(key)?)
}

/// A segment of `air` uses Owens at 15 °C, 101 325 Pa, 20 % RH, 800 nm.
pub fn segment(spec: &SegmentSpec) -> Result<MediumSegment, CliError> {
    if spec.material == "air" {
        let beta = air_beta(AirModel::Owens, &reference_air())?;
        return Ok(MediumSegment::new("air", 0.0, beta, spec.length)?);
    }
    Ok(material(&spec.material)?.segment(spec.length)?)
}

pub fn paths(
    args: &PathArgs,
    preset: &PresetValues,
    params: &mut Parameters,
) -> Result<PathPair, CliError> {
    let mut pair = if let Some(b) = args.dispersion {
        params.insert("B", b, "fs^2");
        PathPair::with_dispersion(b)?
    } else if !(args.path1.is_empty() && args.path2.is_empty()) {
        build(&args.path1, &args.path2, params)?
    } else if !(preset.path1.is_empty() && preset.path2.is_empty()) {
        build(&preset.path1, &preset.path2, params)?
    } else {
        return Err(CliError::usage(
            "no media given: pass --B or --path1/--path2",
        ));
    };
    if let Some(delay) = args.delay {
        params.insert("delay", delay, "fs");
        pair.path1
            .push(MediumSegment::new("delay", delay, 0.0, 1.0)?);
    }
    Ok(pair)
}

fn build(
    path1: &[SegmentSpec],
    path2: &[SegmentSpec],
    params: &mut Parameters,
) -> Result<PathPair, CliError> {
    let texts = |specs: &[SegmentSpec]| specs.iter().map(|s| s.text.clone()).collect::<Vec<_>>();
    params.insert_list("path1", texts(path1));
    params.insert_list("path2", texts(path2));
    let segments = |specs: &[SegmentSpec]| specs.iter().map(segment).collect::<Result<Vec<_>, _>>();
    Ok(PathPair::new(segments(path1)?, segments(path2)?))
}
