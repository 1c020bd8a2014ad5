use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::presets::Preset;

#[derive(Debug, Parser)]
#[command(
    name = "nphoton",
    version,
    about = "Arrival-time statistics of frequency-entangled N-photon states in dispersive media"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory for reports, CSV files and manifests.
    #[arg(
        long,
        global = true,
        env = "NPHOTON_OUT_DIR",
        default_value = "nphoton-out"
    )]
    pub out_dir: PathBuf,

    /// Format of the report printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantum and classical widths for one configuration.
    #[command(allow_negative_numbers = true)]
    Width(WidthArgs),
    /// p = σ_φ·σ against N for the quantum and classical widths (CSV).
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Ratio R = σ_Q/σ_C over photon number and silica length (CSV).
    Surface(SurfaceArgs),
    /// Transition photon number and the equivalent media.
    #[command(allow_negative_numbers = true)]
    Transition(TransitionArgs),
    /// Run the quadrature and Monte Carlo verification suites.
    Verify(VerifyArgs),
    /// Dispersion of a material or of air.
    Media(MediaArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// One-sigma spectral width σ_φ, rad/s.
    #[arg(long, value_name = "RAD_PER_S")]
    pub sigma_phi: Option<f64>,

    /// Centre wavelength, nm.
    #[arg(long, value_name = "NM", default_value_t = 800.0)]
    pub wavelength: f64,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PathArgs {
    /// Segment of path 1 as MATERIAL:LENGTH with a unit, e.g. silica:1cm or air:24m. Repeatable.
    #[arg(long, value_name = "MATERIAL:LENGTH")]
    pub path1: Vec<SegmentSpec>,

    /// Segment of path 2, as for --path1.
    #[arg(long, value_name = "MATERIAL:LENGTH")]
    pub path2: Vec<SegmentSpec>,

    /// Total dispersion B = β₁x + β₂x′, fs², placed in path 1.
    #[arg(long = "B", id = "dispersion", value_name = "FS2", conflicts_with_all = ["path1", "path2"])]
    pub dispersion: Option<f64>,

    /// Group-delay offset α₁x − α₂x′ added to path 1, fs.
    #[arg(long, value_name = "FS")]
    pub delay: Option<f64>,
}

impl PathArgs {
    pub fn is_empty(&self) -> bool {
        self.path1.is_empty() && self.path2.is_empty() && self.dispersion.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateArg {
    Anti,
    Corr,
    Coherent,
}

#[derive(Debug, Clone, Args)]
pub struct WidthArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Photons per arm.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<u64>,

    #[arg(long, value_enum, default_value_t = StateArg::Anti)]
    pub state: StateArg,

    /// |v| of the coherent state.
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,

    /// |u| of the coherent state.
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,

    #[command(flatten)]
    pub spectrum: SpectrumArgs,

    #[command(flatten)]
    pub paths: PathArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Smallest photon number.
    #[arg(long, value_parser = parse_count)]
    pub n_min: Option<u64>,

    /// Largest photon number.
    #[arg(long, value_parser = parse_count)]
    pub n_max: Option<u64>,

    /// Number of log-spaced N values (duplicates after rounding are dropped).
    #[arg(long)]
    pub points: Option<usize>,

    #[command(flatten)]
    pub spectrum: SpectrumArgs,

    #[command(flatten)]
    pub paths: PathArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clip {
    None,
    Unity,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Photon-number range LO:HI, log-spaced.
    #[arg(long, value_name = "LO:HI")]
    pub n_range: Option<Range>,

    #[arg(long)]
    pub n_points: Option<usize>,

    /// Length range LO:HI of the material in path 1, cm, linearly spaced.
    #[arg(long, value_name = "LO:HI")]
    pub x_range: Option<Range>,

    #[arg(long)]
    pub x_points: Option<usize>,

    /// Catalog material filling path 1.
    #[arg(long, default_value = "fused_silica")]
    pub material: String,

    /// `unity` emits values below 1 as 1.0 and adds the raw value as a column.
    #[arg(long, value_enum)]
    pub clip: Option<Clip>,

    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TransitionArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    #[command(flatten)]
    pub spectrum: SpectrumArgs,

    #[command(flatten)]
    pub paths: PathArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quadrature,
    Montecarlo,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Integrand evaluations allowed per integral.
    #[arg(long, default_value_t = 1 << 24)]
    pub max_points: usize,

    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,

    /// Samples per Monte Carlo case.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Edlen,
    Owens,
}

#[derive(Debug, Clone, Args)]
pub struct MediaArgs {
    /// `air` or a catalog material such as `fused_silica` (alias `silica`).
    #[arg(long, default_value = "air")]
    pub material: String,

    #[arg(long, value_enum, default_value_t = ModelArg::Owens)]
    pub model: ModelArg,

    /// nm
    #[arg(long, default_value_t = 800.0)]
    pub wavelength: f64,

    /// °C
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    pub temperature: f64,

    /// Pa
    #[arg(long, default_value_t = nphoton_core::units::STANDARD_PRESSURE_PA)]
    pub pressure: f64,

    /// Relative humidity as a fraction in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    pub rh: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

/// One medium: a material name and a length with an explicit unit.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSpec {
    pub material: String,
    /// cm
    pub length: f64,
    pub text: String,
}

impl FromStr for SegmentSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (material, length) = s
            .split_once(':')
            .ok_or_else(|| format!("expected MATERIAL:LENGTH, got `{s}`"))?;
        if material.is_empty() {
            return Err(format!("missing material in `{s}`"));
        }
        Ok(Self {
            material: material.to_string(),
            length: parse_length_cm(length)?,
            text: s.to_string(),
        })
    }
}

/// Parses a length such as `1cm`, `4m` or `2.5mm` into cm. A bare number is
/// rejected because cm and m are both in common use here.
pub fn parse_length_cm(s: &str) -> Result<f64, String> {
    let split = s
        .find(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E')
        .ok_or_else(|| format!("length `{s}` needs a unit: mm, cm, m or km"))?;
    let (number, unit) = s.split_at(split);
    let scale = match unit {
        "mm" => 0.1,
        "cm" => 1.0,
        "m" => 100.0,
        "km" => 1e5,
        other => return Err(format!("unknown length unit `{other}`")),
    };
    let value: f64 = number
        .parse()
        .map_err(|_| format!("invalid length `{number}`"))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(format!("length `{s}` must be finite and >= 0"));
    }
    Ok(value * scale)
}

/// Accepts integers written as `7305` or `1e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let value: f64 = s.parse().map_err(|_| format!("invalid count `{s}`"))?;
    if !(value >= 1.0 && value.fract() == 0.0 && value <= 1e15) {
        return Err(format!("`{s}` is not a positive integer"));
    }
    Ok(value as u64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
        let lo: f64 = lo.parse().map_err(|_| format!("invalid bound `{lo}`"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("invalid bound `{hi}`"))?;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(format!("bounds in `{s}` must be finite"));
        }
        Ok(Self { lo, hi })
    }
}
