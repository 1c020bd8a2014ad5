//! Refractive index of air from the Edlén (1966) and Owens (1967) formulas.
//!
//! Coefficients live in `data/refractivity.toml` and are parsed once.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::units::STANDARD_PRESSURE_PA;

/// Shortest wavelength accepted by the refractivity formulas, nm.
pub const MIN_WAVELENGTH_NM: f64 = 350.0;
/// Longest wavelength accepted by the refractivity formulas, nm.
pub const MAX_WAVELENGTH_NM: f64 = 1700.0;

const PA_PER_TORR: f64 = 101_325.0 / 760.0;
const PA_PER_MBAR: f64 = 100.0;
const ZERO_CELSIUS_K: f64 = 273.15;

/// Ambient conditions for the air refractivity formulas.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AirConditions {
    /// °C
    pub temperature: f64,
    /// Pa
    pub pressure: f64,
    /// Fraction in [0, 1].
    pub relative_humidity: f64,
    /// Vacuum wavelength, nm.
    pub wavelength: f64,
}

impl AirConditions {
    pub fn new(
        temperature: f64,
        pressure: f64,
        relative_humidity: f64,
        wavelength: f64,
    ) -> Result<Self> {
        let conditions = Self {
            temperature,
            pressure,
            relative_humidity,
            wavelength,
        };
        conditions.validate()?;
        Ok(conditions)
    }

    /// Standard dry air at 15 °C and 101 325 Pa.
    pub fn standard(wavelength: f64) -> Self {
        Self {
            temperature: 15.0,
            pressure: STANDARD_PRESSURE_PA,
            relative_humidity: 0.0,
            wavelength,
        }
    }

    pub fn with_humidity(self, relative_humidity: f64) -> Self {
        Self {
            relative_humidity,
            ..self
        }
    }

    pub fn with_wavelength(self, wavelength: f64) -> Self {
        Self { wavelength, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.temperature.is_finite() || self.temperature <= -ZERO_CELSIUS_K {
            return Err(Error::invalid(
                "temperature",
                "must be finite and above 0 K",
            ));
        }
        if !(self.pressure.is_finite() && self.pressure > 0.0) {
            return Err(Error::invalid("pressure", "must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.relative_humidity) {
            return Err(Error::invalid("relative_humidity", "must lie in [0, 1]"));
        }
        check_wavelength(self.wavelength)
    }

    /// Water-vapour partial pressure, Pa.
    pub fn vapour_pressure(&self) -> f64 {
        let sat = &coefficients().saturation_vapour;
        let t = self.temperature;
        let saturated_mbar = sat.scale * (sat.a * t / (t + sat.b)).exp();
        self.relative_humidity * saturated_mbar * PA_PER_MBAR
    }
}

pub(crate) fn check_wavelength(wavelength_nm: f64) -> Result<()> {
    if (MIN_WAVELENGTH_NM..=MAX_WAVELENGTH_NM).contains(&wavelength_nm) {
        Ok(())
    } else {
        Err(Error::WavelengthOutOfRange {
            wavelength_nm,
            min_nm: MIN_WAVELENGTH_NM,
            max_nm: MAX_WAVELENGTH_NM,
        })
    }
}

/// Refractivity `n - 1` of dry air from Edlén's 1966 dispersion equation
/// with his pressure/temperature density correction. Humidity is ignored.
pub fn edlen_refractivity(conditions: &AirConditions) -> Result<f64> {
    conditions.validate()?;
    Ok(edlen_unchecked(conditions))
}

pub(crate) fn edlen_unchecked(conditions: &AirConditions) -> f64 {
    let edlen = &coefficients().edlen_1966;
    let s2 = wavenumber_sq(conditions.wavelength);
    let standard = edlen.dispersion.eval(s2) * 1e-8;

    let p = conditions.pressure / PA_PER_TORR;
    let t = conditions.temperature;
    let d = &edlen.density;
    let density = p * (1.0 + p * (d.p0 - d.p1 * t) * 1e-6) / (d.scale * (1.0 + d.thermal * t));
    standard * density
}

/// Refractivity `n - 1` of moist air from Owens' 1967 formulation: a dry-air
/// term and a water-vapour term, each weighted by its density factor.
pub fn owens_refractivity(conditions: &AirConditions) -> Result<f64> {
    conditions.validate()?;
    owens_unchecked(conditions)
}

pub(crate) fn owens_unchecked(conditions: &AirConditions) -> Result<f64> {
    let owens = &coefficients().owens_1967;
    let s2 = wavenumber_sq(conditions.wavelength);
    let temp_k = conditions.temperature + ZERO_CELSIUS_K;

    let water_mbar = conditions.vapour_pressure() / PA_PER_MBAR;
    let dry_mbar = conditions.pressure / PA_PER_MBAR - water_mbar;
    if dry_mbar <= 0.0 {
        return Err(Error::invalid(
            "pressure",
            "total pressure below the water-vapour partial pressure",
        ));
    }

    let k = &owens.dry_density;
    let dry_density =
        dry_mbar / temp_k * (1.0 + dry_mbar * (k.k0 + k.k1 / temp_k + k.k2 / temp_k.powi(2)));

    let m = &owens.water_density;
    let water_density = water_mbar / temp_k
        * (1.0
            + water_mbar
                * (1.0 + m.q * water_mbar)
                * (m.m0 + m.m1 / temp_k + m.m2 / temp_k.powi(2) + m.m3 / temp_k.powi(3)));

    let w = &owens.water;
    let water_term = w.w0 + s2 * (w.w1 + s2 * (w.w2 + s2 * w.w3));

    Ok((owens.dry.eval(s2) * dry_density + water_term * water_density) * 1e-8)
}

fn wavenumber_sq(wavelength_nm: f64) -> f64 {
    let s = 1000.0 / wavelength_nm;
    s * s
}

#[derive(Debug, Deserialize)]
struct RefractivityData {
    #[allow(dead_code)]
    version: u32,
    edlen_1966: EdlenData,
    owens_1967: OwensData,
    saturation_vapour: SaturationVapour,
}

#[derive(Debug, Deserialize)]
struct TwoPole {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

impl TwoPole {
    fn eval(&self, s2: f64) -> f64 {
        self.a + self.b / (self.c - s2) + self.d / (self.e - s2)
    }
}

#[derive(Debug, Deserialize)]
struct EdlenData {
    dispersion: TwoPole,
    density: EdlenDensity,
}

#[derive(Debug, Deserialize)]
struct EdlenDensity {
    p0: f64,
    p1: f64,
    scale: f64,
    thermal: f64,
}

#[derive(Debug, Deserialize)]
struct OwensData {
    dry: TwoPole,
    dry_density: DryDensity,
    water: WaterDispersion,
    water_density: WaterDensity,
}

#[derive(Debug, Deserialize)]
struct DryDensity {
    k0: f64,
    k1: f64,
    k2: f64,
}

#[derive(Debug, Deserialize)]
struct WaterDispersion {
    w0: f64,
    w1: f64,
    w2: f64,
    w3: f64,
}

#[derive(Debug, Deserialize)]
struct WaterDensity {
    q: f64,
    m0: f64,
    m1: f64,
    m2: f64,
    m3: f64,
}

#[derive(Debug, Deserialize)]
struct SaturationVapour {
    scale: f64,
    a: f64,
    b: f64,
}

fn coefficients() -> &'static RefractivityData {
    static DATA: OnceLock<RefractivityData> = OnceLock::new();
    DATA.get_or_init(|| {
        toml::from_str(include_str!("../../data/refractivity.toml"))
            .expect("bundled refractivity.toml is valid")
    })
}
