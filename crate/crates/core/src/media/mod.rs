//! Dispersive media as low-order Taylor expansions of k(ω) about the
//! carrier, `k(ω₀ + ε) = k₀ + α ε + β ε²`, plus the refractive index of air.

pub mod air;
pub mod catalog;

use std::ops::Add;

use serde::{Deserialize, Serialize};

pub use air::{edlen_refractivity, owens_refractivity, AirConditions};
pub use catalog::{catalog, fused_silica, Catalog, Material};

use crate::error::{Error, Result};
use crate::units::{omega_to_wavelength_nm, wavelength_nm_to_omega, SPEED_OF_LIGHT_CM_PER_FS};

/// One homogeneous dispersive element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MediumSegment {
    pub label: String,
    /// Group-delay coefficient, fs/cm.
    pub alpha: f64,
    /// Group-delay-dispersion coefficient, fs²/cm. May be negative.
    pub beta: f64,
    /// cm
    pub length: f64,
}

impl MediumSegment {
    pub fn new(label: impl Into<String>, alpha: f64, beta: f64, length: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::invalid("alpha", "must be finite"));
        }
        if !beta.is_finite() {
            return Err(Error::invalid("beta", "must be finite"));
        }
        if !(length.is_finite() && length >= 0.0) {
            return Err(Error::invalid("length", "must be finite and >= 0"));
        }
        Ok(Self {
            label: label.into(),
            alpha,
            beta,
            length,
        })
    }

    /// A unit-length pseudo-segment carrying already-aggregated totals
    /// (`alpha_x` in fs, `beta_x` in fs²).
    pub fn lumped(label: impl Into<String>, alpha_x: f64, beta_x: f64) -> Result<Self> {
        Self::new(label, alpha_x, beta_x, 1.0)
    }

    pub fn coefficients(&self) -> PathCoefficients {
        PathCoefficients {
            alpha_x: self.alpha * self.length,
            beta_x: self.beta * self.length,
        }
    }
}

/// Aggregate coefficients of a path: `Σ αᵢ xᵢ` (fs) and `Σ βᵢ xᵢ` (fs²).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PathCoefficients {
    pub alpha_x: f64,
    pub beta_x: f64,
}

impl Add for PathCoefficients {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            alpha_x: self.alpha_x + rhs.alpha_x,
            beta_x: self.beta_x + rhs.beta_x,
        }
    }
}

/// Sums the per-segment contributions of a path. An empty path is (0, 0).
pub fn path_coefficients(path: &[MediumSegment]) -> PathCoefficients {
    path.iter()
        .map(MediumSegment::coefficients)
        .fold(PathCoefficients::default(), Add::add)
}

/// Coefficients accumulated from the source up to `position` cm along the
/// path. The segment containing `position` contributes only the part before
/// it. Positions past the end of the path are rejected.
pub fn path_coefficients_to(path: &[MediumSegment], position: f64) -> Result<PathCoefficients> {
    if !(position.is_finite() && position >= 0.0) {
        return Err(Error::invalid("position", "must be finite and >= 0"));
    }
    let mut remaining = position;
    let mut total = PathCoefficients::default();
    for segment in path {
        if remaining <= segment.length {
            let partial = MediumSegment {
                length: remaining,
                ..segment.clone()
            };
            return Ok(total + partial.coefficients());
        }
        total = total + segment.coefficients();
        remaining -= segment.length;
    }
    if remaining == 0.0 {
        return Ok(total);
    }
    let length: f64 = path.iter().map(|s| s.length).sum();
    Err(Error::invalid(
        "position",
        format!("{position} cm lies beyond the end of the path ({length} cm)"),
    ))
}

/// The two arms of the experiment: path 1 to detector 1, path 2 to detector 2.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PathPair {
    pub path1: Vec<MediumSegment>,
    pub path2: Vec<MediumSegment>,
}

impl PathPair {
    pub fn new(path1: Vec<MediumSegment>, path2: Vec<MediumSegment>) -> Self {
        Self { path1, path2 }
    }

    /// Both arms described directly by their totals.
    pub fn from_totals(alpha1_x: f64, beta1_x: f64, alpha2_x: f64, beta2_x: f64) -> Result<Self> {
        Ok(Self::new(
            vec![MediumSegment::lumped("path1", alpha1_x, beta1_x)?],
            vec![MediumSegment::lumped("path2", alpha2_x, beta2_x)?],
        ))
    }

    /// Total dispersion `B` placed entirely in path 1; path 2 is free.
    pub fn with_dispersion(b: f64) -> Result<Self> {
        Self::from_totals(0.0, b, 0.0, 0.0)
    }

    pub fn path1_coefficients(&self) -> PathCoefficients {
        path_coefficients(&self.path1)
    }

    pub fn path2_coefficients(&self) -> PathCoefficients {
        path_coefficients(&self.path2)
    }

    /// `B = β₁x + β₂x′`, fs².
    pub fn dispersion_sum(&self) -> f64 {
        self.path1_coefficients().beta_x + self.path2_coefficients().beta_x
    }

    /// `α₁x − α₂x′`, fs.
    pub fn delay_difference(&self) -> f64 {
        self.path1_coefficients().alpha_x - self.path2_coefficients().alpha_x
    }

    /// `α₁x + α₂x′`, fs.
    pub fn delay_sum(&self) -> f64 {
        self.path1_coefficients().alpha_x + self.path2_coefficients().alpha_x
    }
}

/// Default finite-difference step as a fraction of ω₀.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-4;

/// Largest tolerated rounding error, relative to the curvature scale
/// `|f(ω₀)| / ω₀²`, before a step is rejected as too small.
const MAX_ROUNDING: f64 = 1e-5;

/// `β = (1/2c) d²(ω n(ω))/dω²` in fs²/cm, from a refractivity function
/// `ω ↦ n(ω) − 1` (ω in rad/fs).
///
/// Works on `ω (n − 1)` rather than `ω n`: the linear term has no curvature,
/// and dropping it keeps the second difference clear of cancellation when
/// `n − 1 ~ 3e-4`. The second derivative is a central difference at `step`
/// and `step / 2` combined by Richardson extrapolation.
pub fn beta_from_refractivity<F>(refractivity: F, omega0: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(Error::invalid("omega0", "must be > 0"));
    }
    if !(step.is_finite() && step > 0.0 && step < omega0) {
        return Err(Error::invalid("step", "must satisfy 0 < step < omega0"));
    }
    let rounding = 4.0 * f64::EPSILON * (omega0 / (0.5 * step)).powi(2);
    if rounding > MAX_ROUNDING {
        return Err(Error::StepTooSmall {
            step,
            rounding,
            suggested: DEFAULT_RELATIVE_STEP * omega0,
        });
    }

    let f = |w: f64| refractivity(w).map(|n1| w * n1);
    let center = f(omega0)?;
    let second =
        |h: f64| -> Result<f64> { Ok((f(omega0 + h)? - 2.0 * center + f(omega0 - h)?) / (h * h)) };
    let coarse = second(step)?;
    let fine = second(0.5 * step)?;
    let curvature = (4.0 * fine - coarse) / 3.0;
    Ok(curvature / (2.0 * SPEED_OF_LIGHT_CM_PER_FS))
}

/// Which empirical air formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AirModel {
    Edlen,
    Owens,
}

impl AirModel {
    pub fn refractivity(self, conditions: &AirConditions) -> Result<f64> {
        match self {
            AirModel::Edlen => edlen_refractivity(conditions),
            AirModel::Owens => owens_refractivity(conditions),
        }
    }
}

/// β of air (fs²/cm) at the conditions' wavelength.
pub fn air_beta(model: AirModel, conditions: &AirConditions) -> Result<f64> {
    conditions.validate()?;
    let omega0 = wavelength_nm_to_omega(conditions.wavelength);
    // The stencil may step a hair outside the validity window at its edges;
    // only the centre wavelength is range-checked.
    let refractivity = |omega: f64| {
        let shifted = conditions.with_wavelength(omega_to_wavelength_nm(omega));
        match model {
            AirModel::Edlen => Ok(air::edlen_unchecked(&shifted)),
            AirModel::Owens => air::owens_unchecked(&shifted),
        }
    };
    beta_from_refractivity(refractivity, omega0, DEFAULT_RELATIVE_STEP * omega0)
}

/// Reference conditions for the silica/air equivalence: 15 °C, 101 325 Pa,
/// 20 % relative humidity, 800 nm, Owens formula.
pub fn reference_air() -> AirConditions {
    AirConditions::standard(800.0).with_humidity(0.2)
}

/// Length of air (m) with the same `βx` as `silica_length` cm of fused
/// silica, using the catalog silica β and Owens air at [`reference_air`].
pub fn equivalent_air_length(silica_length: f64) -> Result<f64> {
    if !(silica_length.is_finite() && silica_length >= 0.0) {
        return Err(Error::invalid("silica_length", "must be finite and >= 0"));
    }
    let beta_air = air_beta(AirModel::Owens, &reference_air())?;
    Ok(silica_length * fused_silica().beta / beta_air / 100.0)
}
