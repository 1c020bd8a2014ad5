//! Closed-form arrival-time laws for the entangled state families and the
//! classical two-pulse comparison.
//!
//! Every family leads to a Gaussian in some linear combination of the mean
//! detection times. With `B = β₁x + β₂x′` the width is
//!
//! ```text
//! σ² = (1 + 4σ_φ⁴N²B²) / (2σ_φ²N²)
//! ```
//!
//! for anti-correlated Fock, correlated Fock and entangled coherent states
//! alike; they differ only in which variable is narrow and where it is
//! centred. Means are always path 1 minus path 2 (or their sum).

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::media::{path_coefficients_to, PathPair};
use crate::spectral::{check_sigma_phi, g_intensity_width, GaussianSpectrum};

/// Largest photon number accepted by the width formulas.
pub const MAX_PHOTON_NUMBER: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateKind {
    /// N photons at ω₀+ε in path 1, N at ω₀−ε in path 2.
    AntiCorrelatedFock,
    /// N photons at ω₀+ε in both paths.
    CorrelatedFock,
    /// Coherent states |v, ω₀+ε⟩ ⊗ |u, ω₀−ε⟩, conditioned on N detections
    /// per arm.
    EntangledCoherent { v_mag: f64, u_mag: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub kind: StateKind,
    /// Photons (or detections) per arm.
    pub n_photons: u64,
}

impl StateSpec {
    pub fn new(kind: StateKind, n_photons: u64) -> Result<Self> {
        check_photon_number(n_photons)?;
        if let StateKind::EntangledCoherent { v_mag, u_mag } = kind {
            for (name, value) in [("v_mag", v_mag), ("u_mag", u_mag)] {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(Error::invalid(name, "must be finite and >= 0"));
                }
            }
        }
        Ok(Self { kind, n_photons })
    }

    pub fn anti_correlated(n_photons: u64) -> Result<Self> {
        Self::new(StateKind::AntiCorrelatedFock, n_photons)
    }

    pub fn correlated(n_photons: u64) -> Result<Self> {
        Self::new(StateKind::CorrelatedFock, n_photons)
    }

    pub fn coherent(n_photons: u64, v_mag: f64, u_mag: f64) -> Result<Self> {
        Self::new(StateKind::EntangledCoherent { v_mag, u_mag }, n_photons)
    }

    /// Overall detection-probability scale relative to the Fock state:
    /// `|v|^{2N} |u|^{2N}` for coherent states, 1 otherwise.
    pub fn amplitude_scale(&self) -> f64 {
        match self.kind {
            StateKind::EntangledCoherent { v_mag, u_mag } => {
                power(v_mag, 2 * self.n_photons) * power(u_mag, 2 * self.n_photons)
            }
            _ => 1.0,
        }
    }

    /// The observable whose distribution is narrow for this state.
    pub fn variable(&self) -> TimingVariable {
        match self.kind {
            StateKind::CorrelatedFock => TimingVariable::SumOfMeanTimes,
            _ => TimingVariable::DiffOfMeanTimes,
        }
    }

    /// Centre of the distribution for the given paths, fs.
    pub fn mean(&self, paths: &PathPair) -> f64 {
        match self.kind {
            StateKind::CorrelatedFock => paths.delay_sum(),
            _ => paths.delay_difference(),
        }
    }
}

fn power(base: f64, exponent: u64) -> f64 {
    match i32::try_from(exponent) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exponent as f64),
    }
}

fn check_photon_number(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n", "photon number must be >= 1"));
    }
    if n > MAX_PHOTON_NUMBER {
        return Err(Error::invalid(
            "n",
            format!("photon number must be <= {MAX_PHOTON_NUMBER}"),
        ));
    }
    Ok(())
}

/// Which combination of detection times the distribution describes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variable", rename_all = "snake_case")]
pub enum TimingVariable {
    /// `τ = t̄ − t̄′`.
    DiffOfMeanTimes,
    /// `τ′ = t̄ + t̄′`.
    SumOfMeanTimes,
    /// `τ = t − t′` for detectors gated at fixed times; the distribution is
    /// over detection positions. Valid for gate widths well below
    /// `max_gate_width` = 1/(Nω₀) fs, which is recorded but not enforced.
    GatedTimeDiff { max_gate_width: f64 },
}

impl TimingVariable {
    pub fn short_name(&self) -> &'static str {
        match self {
            TimingVariable::DiffOfMeanTimes => "difference",
            TimingVariable::SumOfMeanTimes => "sum",
            TimingVariable::GatedTimeDiff { .. } => "gated_difference",
        }
    }
}

/// A Gaussian timing law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingDistribution {
    pub variable: TimingVariable,
    /// fs
    pub mean: f64,
    /// fs
    pub sigma: f64,
    pub amplitude_scale: f64,
}

impl TimingDistribution {
    /// Normalized Gaussian density at `tau` (1/fs). `amplitude_scale` does
    /// not enter.
    pub fn density_at(&self, tau: f64) -> f64 {
        let z = (tau - self.mean) / self.sigma;
        (-0.5 * z * z).exp() / (self.sigma * (2.0 * PI).sqrt())
    }
}

/// Free-function form of [`TimingDistribution::density_at`].
pub fn density_at(dist: &TimingDistribution, tau: f64) -> f64 {
    dist.density_at(tau)
}

/// Width (fs) of the mean-time distribution for `n` photons per arm and
/// total dispersion `b` (fs²).
///
/// Evaluated as `(σ_g/N)·√(1 + (2σ_φ²NB)²)` so that `b = 0` reproduces the
/// narrowed single-photon width `σ_g/N` bit for bit.
pub fn quantum_width(sigma_phi: f64, n: u64, b: f64) -> Result<f64> {
    check_photon_number(n)?;
    quantum_width_continuous(sigma_phi, n as f64, b)
}

/// [`quantum_width`] with N treated as a continuous parameter, e.g. to
/// evaluate the width exactly at a non-integer transition number.
pub fn quantum_width_continuous(sigma_phi: f64, n: f64, b: f64) -> Result<f64> {
    check_sigma_phi(sigma_phi)?;
    if !(n.is_finite() && n > 0.0 && n <= MAX_PHOTON_NUMBER as f64) {
        return Err(Error::invalid(
            "n",
            format!("photon number must lie in (0, {MAX_PHOTON_NUMBER}]"),
        ));
    }
    if !b.is_finite() {
        return Err(Error::invalid("B", "must be finite"));
    }
    let chirp = 2.0 * sigma_phi * sigma_phi * n * b;
    Ok(g_intensity_width(sigma_phi) / n * chirp.hypot(1.0))
}

/// Large-N limit of [`quantum_width`]: `√2 σ_φ |B|`.
pub fn asymptotic_width(sigma_phi: f64, b: f64) -> f64 {
    SQRT_2 * sigma_phi * b.abs()
}

/// Photon number at which dispersion broadening equals the bandwidth term,
/// `N_t = 1 / (2σ_φ²|B|)`.
pub fn transition_photon_number(sigma_phi: f64, b: f64) -> Result<f64> {
    check_sigma_phi(sigma_phi)?;
    if !b.is_finite() {
        return Err(Error::invalid("B", "must be finite"));
    }
    if b == 0.0 {
        return Err(Error::NoTransition);
    }
    Ok(1.0 / (2.0 * sigma_phi * sigma_phi * b.abs()))
}

/// Width (fs) of the arrival-time difference for a pair of classical
/// Gaussian pulses, `σ_T² = (2a_φ⁴ + β₁²x₁² + β₂²x₂²) / a_φ²`.
pub fn classical_width(sigma_phi: f64, b1x1: f64, b2x2: f64) -> Result<f64> {
    check_sigma_phi(sigma_phi)?;
    let a2 = crate::spectral::a_phi_sq(sigma_phi);
    Ok(((2.0 * a2 * a2 + b1x1 * b1x1 + b2x2 * b2x2) / a2).sqrt())
}

/// `σ_C = σ_T / √N`.
pub fn classical_shot_noise(sigma_t: f64, n: u64) -> Result<f64> {
    check_photon_number(n)?;
    Ok(sigma_t / (n as f64).sqrt())
}

/// The Gaussian law for the state's narrow variable.
pub fn quantum_distribution(
    state: &StateSpec,
    spectrum: &GaussianSpectrum,
    paths: &PathPair,
) -> Result<TimingDistribution> {
    Ok(TimingDistribution {
        variable: state.variable(),
        mean: state.mean(paths),
        sigma: quantum_width(spectrum.sigma_phi, state.n_photons, paths.dispersion_sum())?,
        amplitude_scale: state.amplitude_scale(),
    })
}

/// `σ_Q / σ_C` for the same N and media.
pub fn quantum_classical_ratio(
    state: &StateSpec,
    spectrum: &GaussianSpectrum,
    paths: &PathPair,
) -> Result<f64> {
    let quantum = quantum_width(spectrum.sigma_phi, state.n_photons, paths.dispersion_sum())?;
    let sigma_t = classical_width(
        spectrum.sigma_phi,
        paths.path1_coefficients().beta_x,
        paths.path2_coefficients().beta_x,
    )?;
    Ok(quantum / classical_shot_noise(sigma_t, state.n_photons)?)
}

/// Position-resolved law for detectors gated on at fixed times. `xbar` and
/// `xbar_prime` are mean detection depths (cm) measured along each path from
/// the source; the media up to those depths set the mean
/// `τ₀ = α₁x̄ − α₂x̄′` and `B = β₁x̄ + β₂x̄′`.
pub fn thick_detector_distribution(
    state: &StateSpec,
    spectrum: &GaussianSpectrum,
    paths: &PathPair,
    xbar: f64,
    xbar_prime: f64,
) -> Result<TimingDistribution> {
    let c1 = path_coefficients_to(&paths.path1, xbar)?;
    let c2 = path_coefficients_to(&paths.path2, xbar_prime)?;
    let n = state.n_photons;
    let max_gate_width = if spectrum.omega0 > 0.0 {
        1.0 / (n as f64 * spectrum.omega0)
    } else {
        f64::INFINITY
    };
    Ok(TimingDistribution {
        variable: TimingVariable::GatedTimeDiff { max_gate_width },
        mean: c1.alpha_x - c2.alpha_x,
        sigma: quantum_width(spectrum.sigma_phi, n, c1.beta_x + c2.beta_x)?,
        amplitude_scale: state.amplitude_scale(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::MediumSegment;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const SIGMA: f64 = 3.7e-4;

    fn spectrum() -> GaussianSpectrum {
        GaussianSpectrum::new(2.354_564_459, SIGMA).unwrap()
    }

    #[test]
    fn cancelled_width() {
        for n in [1, 2, 7, 1000] {
            assert_relative_eq!(
                quantum_width(SIGMA, n, 0.0).unwrap(),
                1.0 / (SQRT_2 * SIGMA * n as f64),
                max_relative = 1e-15
            );
        }
        assert_eq!(
            quantum_width(SIGMA, 1, 0.0).unwrap(),
            spectrum().g_intensity_width()
        );
    }

    #[test]
    fn zero_photons_rejected() {
        assert!(quantum_width(SIGMA, 0, 1.0).is_err());
        assert!(classical_shot_noise(1.0, 0).is_err());
        assert!(StateSpec::anti_correlated(0).is_err());
        assert!(quantum_width(SIGMA, MAX_PHOTON_NUMBER + 1, 1.0).is_err());
        assert!(quantum_width(SIGMA, MAX_PHOTON_NUMBER, 1.0).is_ok());
        assert!(quantum_width_continuous(SIGMA, 0.0, 1.0).is_err());
        assert!(quantum_width_continuous(SIGMA, 0.5, 1.0).is_ok());
    }

    #[test]
    fn width_at_transition_is_root_two_times_asymptote() {
        let b = 500.0;
        let nt = transition_photon_number(SIGMA, b).unwrap();
        assert_relative_eq!(nt, 7305.3, max_relative = 1e-4);
        let width = quantum_width_continuous(SIGMA, nt, b).unwrap();
        assert_relative_eq!(
            width / asymptotic_width(SIGMA, b),
            SQRT_2,
            max_relative = 1e-12
        );
        // At the nearest integer the ratio is off by ~2e-5.
        let rounded = quantum_width(SIGMA, 7305, b).unwrap() / asymptotic_width(SIGMA, b);
        assert_relative_eq!(rounded, SQRT_2, max_relative = 1e-4);
    }

    #[test]
    fn large_n_reaches_asymptote() {
        let w = quantum_width(SIGMA, 1_000_000_000, 1e5).unwrap();
        assert_relative_eq!(w, SQRT_2 * SIGMA * 1e5, max_relative = 1e-9);
        assert_relative_eq!(w, 52.326, max_relative = 1e-4);
    }

    #[test]
    fn monotone_in_n() {
        let b = 2e4;
        let w10 = quantum_width(SIGMA, 10, b).unwrap();
        let w100 = quantum_width(SIGMA, 100, b).unwrap();
        assert!(w10 > w100 && w100 > asymptotic_width(SIGMA, b));
    }

    #[test]
    fn asymptote_values() {
        assert_eq!(asymptotic_width(SIGMA, 0.0), 0.0);
        assert_relative_eq!(
            asymptotic_width(SIGMA, 500.0),
            0.261_62,
            max_relative = 1e-4
        );
        assert_eq!(
            asymptotic_width(SIGMA, -500.0),
            asymptotic_width(SIGMA, 500.0)
        );
    }

    #[test]
    fn transition_numbers() {
        assert_eq!(
            transition_photon_number(SIGMA, 0.0),
            Err(Error::NoTransition)
        );
        let nt = transition_photon_number(SIGMA, 36_523.0).unwrap();
        assert_relative_eq!(nt, 100.0, max_relative = 1e-3);
        assert_relative_eq!(
            transition_photon_number(SIGMA, 1000.0).unwrap(),
            0.5 * transition_photon_number(SIGMA, 500.0).unwrap(),
            max_relative = 1e-15
        );
        assert_eq!(
            transition_photon_number(SIGMA, -500.0).unwrap(),
            transition_photon_number(SIGMA, 500.0).unwrap()
        );
    }

    #[test]
    fn classical_widths() {
        assert_relative_eq!(
            classical_width(SIGMA, 0.0, 0.0).unwrap(),
            1.0 / SIGMA,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            classical_width(SIGMA, 0.0, 0.0).unwrap(),
            SQRT_2 * g_intensity_width(SIGMA),
            max_relative = 1e-14
        );
        assert_eq!(
            classical_width(SIGMA, 300.0, 120.0).unwrap(),
            classical_width(SIGMA, 300.0, -120.0).unwrap()
        );
        // β₁x₁ = β₂x₂ = B/2 at large B: σ_T → σ_φ B, below the quantum √2 σ_φ B.
        let b = 1e12;
        let st = classical_width(SIGMA, b / 2.0, b / 2.0).unwrap();
        assert_relative_eq!(st, SIGMA * b, max_relative = 1e-9);
        assert!(st < asymptotic_width(SIGMA, b));
    }

    #[test]
    fn shot_noise_scaling() {
        assert_eq!(classical_shot_noise(3.0, 1).unwrap(), 3.0);
        assert_relative_eq!(
            classical_shot_noise(3.0, 100).unwrap(),
            0.3,
            max_relative = 1e-15
        );
        let widths: Vec<f64> = (1..50)
            .map(|n| classical_shot_noise(1.0, n).unwrap())
            .collect();
        assert!(widths.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn ratio_without_dispersion() {
        let paths = PathPair::with_dispersion(0.0).unwrap();
        for n in [1, 4, 100] {
            let r = quantum_classical_ratio(
                &StateSpec::anti_correlated(n).unwrap(),
                &spectrum(),
                &paths,
            )
            .unwrap();
            assert_relative_eq!(r, 1.0 / (2.0 * n as f64).sqrt(), max_relative = 1e-14);
            assert!(r < 1.0);
        }
    }

    #[test]
    fn ratio_crossing_is_unique() {
        // Symmetric config, each path carrying half of B.
        let b = 2e4;
        let paths = PathPair::from_totals(0.0, b / 2.0, 0.0, b / 2.0).unwrap();
        let ratios: Vec<f64> = (0..=60)
            .map(|k| 10f64.powf(k as f64 / 10.0).round() as u64)
            .map(|n| {
                quantum_classical_ratio(
                    &StateSpec::anti_correlated(n).unwrap(),
                    &spectrum(),
                    &paths,
                )
                .unwrap()
            })
            .collect();
        let crossings = ratios
            .windows(2)
            .filter(|w| (w[0] < 1.0) != (w[1] < 1.0))
            .count();
        assert_eq!(crossings, 1);
        assert!(ratios[0] < 1.0 && *ratios.last().unwrap() > 1.0);
    }

    #[test]
    fn state_families_share_width() {
        let paths = PathPair::from_totals(500.0, 300.0, 200.0, 100.0).unwrap();
        let anti =
            quantum_distribution(&StateSpec::anti_correlated(2).unwrap(), &spectrum(), &paths)
                .unwrap();
        let corr =
            quantum_distribution(&StateSpec::correlated(2).unwrap(), &spectrum(), &paths).unwrap();
        let coh = quantum_distribution(
            &StateSpec::coherent(2, 1.0, 3.0).unwrap(),
            &spectrum(),
            &paths,
        )
        .unwrap();
        assert_eq!(anti.sigma, corr.sigma);
        assert_eq!(anti.mean, 300.0);
        assert_eq!(corr.mean, 700.0);
        assert_eq!(corr.variable, TimingVariable::SumOfMeanTimes);
        assert_eq!(coh.sigma, anti.sigma);
        assert_eq!(coh.mean, anti.mean);
        assert_eq!(coh.amplitude_scale, 81.0);
        assert_eq!(anti.amplitude_scale, 1.0);
    }

    #[test]
    fn coherent_validation() {
        assert!(StateSpec::coherent(2, -1.0, 1.0).is_err());
        assert!(StateSpec::coherent(2, 1.0, f64::NAN).is_err());
        assert!(StateSpec::coherent(2, 0.0, 1.0).is_ok());
    }

    #[test]
    fn gated_detector() {
        let medium = |label| MediumSegment::new(label, 48_900.0, 250.0, 10.0).unwrap();
        let paths = PathPair::new(vec![medium("a")], vec![medium("b")]);
        let state = StateSpec::anti_correlated(3).unwrap();
        let dist = thick_detector_distribution(&state, &spectrum(), &paths, 4.0, 4.0).unwrap();
        assert_eq!(dist.mean, 0.0);
        assert_eq!(dist.sigma, quantum_width(SIGMA, 3, 2000.0).unwrap());
        match dist.variable {
            TimingVariable::GatedTimeDiff { max_gate_width } => {
                assert_relative_eq!(
                    max_gate_width,
                    1.0 / (3.0 * 2.354_564_459),
                    max_relative = 1e-15
                )
            }
            other => panic!("unexpected {other:?}"),
        }

        let opposite = PathPair::new(
            vec![MediumSegment::new("p", 0.0, 250.0, 10.0).unwrap()],
            vec![MediumSegment::new("q", 0.0, -125.0, 10.0).unwrap()],
        );
        let dist = thick_detector_distribution(&state, &spectrum(), &opposite, 3.0, 6.0).unwrap();
        assert_eq!(dist.sigma, quantum_width(SIGMA, 3, 0.0).unwrap());
        assert_relative_eq!(
            dist.sigma,
            1.0 / (SQRT_2 * SIGMA * 3.0),
            max_relative = 1e-15
        );
        assert!(thick_detector_distribution(&state, &spectrum(), &opposite, 11.0, 1.0).is_err());
    }

    #[test]
    fn density_properties() {
        let d = TimingDistribution {
            variable: TimingVariable::DiffOfMeanTimes,
            mean: 12.0,
            sigma: 3.0,
            amplitude_scale: 1e6,
        };
        assert_relative_eq!(
            d.density_at(12.0),
            1.0 / (3.0 * (2.0 * PI).sqrt()),
            max_relative = 1e-15
        );
        assert_eq!(d.density_at(15.5), d.density_at(8.5));
        // Composite Simpson over ±10σ.
        let (lo, hi, m) = (d.mean - 30.0, d.mean + 30.0, 20_000);
        let h = (hi - lo) / m as f64;
        let mut sum = d.density_at(lo) + d.density_at(hi);
        for k in 1..m {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * d.density_at(lo + k as f64 * h);
        }
        assert!((sum * h / 3.0 - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn width_identity(sigma in 1e-5f64..1e-2, n in 1u64..1_000_000, b in -1e7f64..1e7) {
            let w = quantum_width(sigma, n, b).unwrap();
            let n = n as f64;
            let chirp = 4.0 * sigma.powi(4) * n * n * b * b;
            let lhs = w * w * 2.0 * sigma * sigma * n * n - chirp;
            prop_assert!((lhs - 1.0).abs() <= 1e-12 * (1.0 + chirp));
        }

        #[test]
        fn cancellation_is_exact(sigma in 1e-5f64..1e-2, n in 1u64..100_000, c in 0f64..1e6) {
            let paths = PathPair::from_totals(0.0, c, 0.0, -c).unwrap();
            prop_assert_eq!(
                quantum_width(sigma, n, paths.dispersion_sum()).unwrap(),
                quantum_width(sigma, n, 0.0).unwrap()
            );
        }

        #[test]
        fn narrowing_law(sigma in 1e-5f64..1e-2, n in 1u64..1000) {
            prop_assert_eq!(quantum_width(sigma, n, 0.0).unwrap(), g_intensity_width(sigma) / n as f64);
        }

        #[test]
        fn above_asymptote(sigma in 1e-5f64..1e-2, n in 1u64..1_000_000, b in 1f64..1e6) {
            let chirp = 2.0 * sigma * sigma * n as f64 * b;
            // Past chirp ~1e7 the excess drops below one ulp.
            prop_assume!(chirp < 1e6);
            prop_assert!(quantum_width(sigma, n, b).unwrap() > asymptotic_width(sigma, b));
        }

        #[test]
        fn classical_sign_flip(sigma in 1e-5f64..1e-2, b1 in -1e6f64..1e6, b2 in -1e6f64..1e6) {
            prop_assert_eq!(
                classical_width(sigma, b1, b2).unwrap(),
                classical_width(sigma, b1, -b2).unwrap()
            );
        }

        #[test]
        fn coherent_magnitudes_irrelevant(v in 0f64..3.0, u in 0f64..3.0, n in 1u64..20, b in -1e5f64..1e5) {
            let paths = PathPair::from_totals(70.0, b, 20.0, 0.0).unwrap();
            let coh = quantum_distribution(&StateSpec::coherent(n, v, u).unwrap(), &spectrum(), &paths).unwrap();
            let fock = quantum_distribution(&StateSpec::anti_correlated(n).unwrap(), &spectrum(), &paths).unwrap();
            prop_assert_eq!(coh.sigma, fock.sigma);
            prop_assert_eq!(coh.mean, fock.mean);
            prop_assert_eq!(coh.amplitude_scale, v.powi(2 * n as i32) * u.powi(2 * n as i32));
        }
    }
}
