//! Gaussian spectral amplitude φ and its time-domain intensity width.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::rad_per_s_to_rad_per_fs;

/// `φ(ω₀ + ε) = exp(−ε² / 2σ_φ²)`, left unnormalized. Densities built from
/// it are normalized where they are reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpectrum {
    /// Carrier frequency, rad/fs.
    pub omega0: f64,
    /// One-sigma spectral width, rad/fs.
    pub sigma_phi: f64,
}

impl GaussianSpectrum {
    pub fn new(omega0: f64, sigma_phi: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 >= 0.0) {
            return Err(Error::invalid("omega0", "must be finite and >= 0"));
        }
        check_sigma_phi(sigma_phi)?;
        Ok(Self { omega0, sigma_phi })
    }

    /// Builds a spectrum from a carrier (rad/fs) and a width in rad/s.
    pub fn from_width_rad_per_s(omega0: f64, sigma_phi_rad_per_s: f64) -> Result<Self> {
        Self::new(omega0, rad_per_s_to_rad_per_fs(sigma_phi_rad_per_s))
    }

    /// `a_φ² = 1 / (2σ_φ²)`, fs².
    pub fn a_phi_sq(&self) -> f64 {
        a_phi_sq(self.sigma_phi)
    }

    /// Spectral amplitude at detuning `epsilon` rad/fs. Peak value 1.
    pub fn phi(&self, epsilon: f64) -> f64 {
        (-epsilon * epsilon / (2.0 * self.sigma_phi * self.sigma_phi)).exp()
    }

    /// One-sigma width of the single-photon intensity `|g(t)|²`, fs.
    pub fn g_intensity_width(&self) -> f64 {
        g_intensity_width(self.sigma_phi)
    }

    /// Timing uncertainty `σ_g / √N` from averaging `n` independent
    /// single-photon packets.
    pub fn shot_noise_width(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::invalid("n", "photon number must be >= 1"));
        }
        Ok(self.g_intensity_width() / (n as f64).sqrt())
    }
}

pub(crate) fn check_sigma_phi(sigma_phi: f64) -> Result<()> {
    if sigma_phi.is_finite() && sigma_phi > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("sigma_phi", "must be finite and > 0"))
    }
}

pub(crate) fn a_phi_sq(sigma_phi: f64) -> f64 {
    0.5 / (sigma_phi * sigma_phi)
}

/// `σ_g = 1 / (√2 σ_φ)`: `|g(t)|² ∝ exp(−σ_φ² t²)` for the Gaussian φ.
pub fn g_intensity_width(sigma_phi: f64) -> f64 {
    std::f64::consts::FRAC_1_SQRT_2 / sigma_phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spectrum() -> GaussianSpectrum {
        GaussianSpectrum::new(2.3546, 3.7e-4).unwrap()
    }

    #[test]
    fn phi_values() {
        let s = spectrum();
        assert_eq!(s.phi(0.0), 1.0);
        assert_relative_eq!(s.phi(s.sigma_phi), (-0.5f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(
            s.phi(-3.0 * s.sigma_phi),
            (-4.5f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn intensity_width() {
        assert_relative_eq!(spectrum().g_intensity_width(), 1911.1, max_relative = 1e-4);
        let wide = GaussianSpectrum::new(2.3546, 7.4e-4).unwrap();
        assert_relative_eq!(
            wide.g_intensity_width(),
            0.5 * spectrum().g_intensity_width(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn reciprocity() {
        for sigma in [1e-6, 3.7e-4, 0.01, 2.0] {
            let s = GaussianSpectrum::new(1.0, sigma).unwrap();
            assert_relative_eq!(
                s.g_intensity_width() * s.sigma_phi,
                std::f64::consts::FRAC_1_SQRT_2,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn shot_noise_baseline() {
        let s = spectrum();
        assert_eq!(s.shot_noise_width(1).unwrap(), s.g_intensity_width());
        assert_relative_eq!(
            s.shot_noise_width(100).unwrap(),
            s.g_intensity_width() / 10.0,
            max_relative = 1e-15
        );
        assert!(s.shot_noise_width(0).is_err());
    }

    #[test]
    fn rad_per_s_ingestion() {
        let s = GaussianSpectrum::from_width_rad_per_s(2.35, 3.7e11).unwrap();
        assert_relative_eq!(s.sigma_phi, 3.7e-4, max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(GaussianSpectrum::new(1.0, 0.0).is_err());
        assert!(GaussianSpectrum::new(1.0, -1.0).is_err());
        assert!(GaussianSpectrum::new(1.0, f64::NAN).is_err());
        assert!(GaussianSpectrum::new(-1.0, 1.0).is_err());
    }
}
