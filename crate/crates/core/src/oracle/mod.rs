//! Direct numerical evaluation of the detection amplitude, used to check the
//! closed forms in [`crate::distributions`].
//!
//! The integrand is assembled photon by photon from the per-path Taylor
//! coefficients, before any grouping into `B` or completing the square:
//!
//! ```text
//! A(τ) = ∫ dε φ(ω₀+ε) · exp{iN[α₁x ε + β₁x ε² + α₂x′ ε₂ + β₂x′ ε₂² − ε t̄ − ε₂ t̄′]}
//! ```
//!
//! with `ε₂ = −ε` for anti-correlated and coherent states, `ε₂ = +ε` for the
//! correlated state, and `(t̄, t̄′) = (τ, 0)`. The `1/N!` prefactor and overall
//! phases are dropped. Normalization uses Parseval's theorem,
//! `∫|A(τ)|² dτ = (2π/N) ∫ φ(ε)² dε`, with the right-hand side integrated
//! numerically, so no closed-form constant enters the numeric side.

pub mod quadrature;

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{quantum_distribution, StateKind, StateSpec};
use crate::error::{Error, Result};
use crate::media::PathPair;
use crate::spectral::GaussianSpectrum;
use quadrature::{try_integrate, Estimate, Tolerance};

/// Largest accepted `N|B|σ_φ²` (rad): the quadratic phase accumulated at one
/// spectral sigma.
pub const MAX_CHIRP_PHASE: f64 = 1e3;
/// Largest accepted `N|ζ|σ_φ` (rad): the linear phase at one spectral sigma,
/// ζ being the offset of τ from the distribution centre.
pub const MAX_TILT_PHASE: f64 = 1e4;
/// Largest phase advance allowed across one initial panel.
pub const MAX_PANEL_PHASE: f64 = FRAC_PI_4;

/// Absolute quadrature floor relative to `∫φ dε`; keeps the far tails from
/// demanding accuracy below rounding.
const ABS_FLOOR: f64 = 1e-15;

/// Densities below this fraction of the peak are excluded from error stats.
pub const DENSITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Integration window half-width in units of σ_φ.
    pub half_width: f64,
    /// Evaluation budget per integral.
    pub max_points: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            half_width: 10.0,
            max_points: 1 << 24,
            rel_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width.is_finite() && self.half_width >= 6.0) {
            return Err(Error::invalid("half_width", "must be >= 6"));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol >= 1e-12) {
            return Err(Error::invalid("rel_tol", "must be >= 1e-12"));
        }
        if self.max_points < quadrature::POINTS_PER_PANEL {
            return Err(Error::invalid(
                "max_points",
                "must cover at least one panel",
            ));
        }
        Ok(())
    }
}

/// Numeric vs closed-form densities on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// fs
    pub grid: Vec<f64>,
    pub closed_form: Vec<f64>,
    pub numeric: Vec<f64>,
    pub max_rel_err: f64,
    pub points_used: usize,
}

/// First three moments of the numeric density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericMoments {
    /// fs
    pub mean: f64,
    /// fs
    pub sigma: f64,
    /// Third central moment, fs³.
    pub third_central: f64,
    pub points_used: usize,
}

/// Per-arm quantities the integrand needs.
#[derive(Debug, Clone, Copy)]
struct Arms {
    n: f64,
    alpha1_x: f64,
    beta1_x: f64,
    alpha2_x: f64,
    beta2_x: f64,
    /// `+1` when path 2 carries ω₀+ε, `−1` when it carries ω₀−ε.
    partner_sign: f64,
    /// `|v|^N |u|^N` for coherent states.
    amplitude: f64,
}

impl Arms {
    fn new(state: &StateSpec, paths: &PathPair) -> Self {
        let c1 = paths.path1_coefficients();
        let c2 = paths.path2_coefficients();
        let (partner_sign, amplitude) = match state.kind {
            StateKind::AntiCorrelatedFock => (-1.0, 1.0),
            StateKind::CorrelatedFock => (1.0, 1.0),
            StateKind::EntangledCoherent { v_mag, u_mag } => {
                let n = state.n_photons as f64;
                (-1.0, v_mag.powf(n) * u_mag.powf(n))
            }
        };
        Self {
            n: state.n_photons as f64,
            alpha1_x: c1.alpha_x,
            beta1_x: c1.beta_x,
            alpha2_x: c2.alpha_x,
            beta2_x: c2.beta_x,
            partner_sign,
            amplitude,
        }
    }

    /// Total phase (rad) of the N photon pairs at detuning `eps` with mean
    /// detection time `tau` on arm 1 and 0 on arm 2.
    fn phase(&self, eps: f64, tau: f64) -> f64 {
        let eps2 = self.partner_sign * eps;
        self.n
            * (self.alpha1_x * eps
                + self.beta1_x * eps * eps
                + self.alpha2_x * eps2
                + self.beta2_x * eps2 * eps2
                - eps * tau)
    }

    /// `|dphase/dε|` collected as `N|2Bε − ζ|`, used only to place panels.
    fn phase_rate(&self, eps: f64, tau: f64) -> f64 {
        let b = self.beta1_x + self.beta2_x;
        let zeta = tau - (self.alpha1_x + self.partner_sign * self.alpha2_x);
        self.n * (2.0 * b * eps - zeta).abs()
    }
}

/// Evaluates the amplitude integrals of one configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub spec: QuadratureSpec,
}

impl Oracle {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spec })
    }

    /// Numeric amplitude `A(τ)` with `1/N!` dropped. For the correlated state
    /// `tau` is the sum of mean times.
    pub fn amplitude_numeric(
        &self,
        state: &StateSpec,
        spectrum: &GaussianSpectrum,
        paths: &PathPair,
        tau: f64,
    ) -> Result<Complex64> {
        Ok(self
            .amplitude_estimate(state, spectrum, paths, tau, Complex64::new(1.0, 0.0))?
            .value)
    }

    /// As [`Oracle::amplitude_numeric`], with the integrand multiplied by a
    /// fixed `unit_phase` and the full quadrature estimate returned.
    pub fn amplitude_estimate(
        &self,
        state: &StateSpec,
        spectrum: &GaussianSpectrum,
        paths: &PathPair,
        tau: f64,
        unit_phase: Complex64,
    ) -> Result<Estimate> {
        self.spec.validate()?;
        let arms = Arms::new(state, paths);
        let sigma = spectrum.sigma_phi;
        check_envelope(&arms, sigma, tau)?;

        let window = self.spec.half_width * sigma;
        let breakpoints =
            phase_breakpoints(-window, window, sigma, |eps| arms.phase_rate(eps, tau));
        let integrand = |eps: f64| {
            let phase = Complex64::from_polar(1.0, arms.phase(eps, tau));
            Ok(unit_phase * phase * (arms.amplitude * spectrum.phi(eps)))
        };
        // ∫φ dε = √(2π) σ_φ bounds |A| and sets the absolute floor.
        let scale = arms.amplitude * (2.0 * PI).sqrt() * sigma;
        let tol = Tolerance {
            abs: ABS_FLOOR * scale,
            rel: self.spec.rel_tol,
        };
        try_integrate(integrand, &breakpoints, tol, self.spec.max_points)
    }

    /// `∫|A(τ)|² dτ` via Parseval, `(2π/N)·amplitude²·∫φ² dε`, with the
    /// spectral integral done numerically.
    fn numeric_norm(
        &self,
        state: &StateSpec,
        spectrum: &GaussianSpectrum,
        paths: &PathPair,
    ) -> Result<f64> {
        let arms = Arms::new(state, paths);
        if arms.amplitude == 0.0 || !arms.amplitude.is_finite() {
            return Err(Error::invalid(
                "state",
                "coherent amplitude |v|^N |u|^N must be finite and non-zero",
            ));
        }
        let sigma = spectrum.sigma_phi;
        let window = self.spec.half_width * sigma;
        let breakpoints: Vec<f64> = (0..=20)
            .map(|k| -window + k as f64 * window / 10.0)
            .collect();
        let est = try_integrate(
            |eps| Ok(Complex64::new(spectrum.phi(eps).powi(2), 0.0)),
            &breakpoints,
            Tolerance {
                abs: 0.0,
                rel: 1e-14,
            },
            self.spec.max_points,
        )?;
        Ok(2.0 * PI / arms.n * arms.amplitude * arms.amplitude * est.value.re)
    }

    /// Compares the normalized numeric `|A(τ)|²` with the closed-form density
    /// at every grid point. Grid points are evaluated in parallel; the report
    /// is independent of scheduling.
    pub fn verify_closed_form(
        &self,
        state: &StateSpec,
        spectrum: &GaussianSpectrum,
        paths: &PathPair,
        grid: &[f64],
    ) -> Result<VerificationReport> {
        if grid.is_empty() {
            return Err(Error::invalid("grid", "must not be empty"));
        }
        let dist = quantum_distribution(state, spectrum, paths)?;
        let norm = self.numeric_norm(state, spectrum, paths)?;

        let estimates: Vec<Estimate> = grid
            .par_iter()
            .map(|&tau| {
                self.amplitude_estimate(state, spectrum, paths, tau, Complex64::new(1.0, 0.0))
            })
            .collect::<Result<_>>()?;

        let numeric: Vec<f64> = estimates
            .iter()
            .map(|e| e.value.norm_sqr() / norm)
            .collect();
        let closed_form: Vec<f64> = grid.iter().map(|&tau| dist.density_at(tau)).collect();
        let peak = dist.density_at(dist.mean);
        let max_rel_err = closed_form
            .iter()
            .zip(&numeric)
            .filter(|(c, _)| **c > DENSITY_FLOOR * peak)
            .map(|(c, n)| (n - c).abs() / c)
            .fold(0.0, f64::max);

        Ok(VerificationReport {
            grid: grid.to_vec(),
            closed_form,
            numeric,
            max_rel_err,
            points_used: estimates.iter().map(|e| e.points_used).sum(),
        })
    }

    /// Mean, width and skew of the numeric `|A(τ)|²`, integrating over τ
    /// around the group-delay offset of the paths.
    pub fn numeric_moments(
        &self,
        state: &StateSpec,
        spectrum: &GaussianSpectrum,
        paths: &PathPair,
    ) -> Result<NumericMoments> {
        let arms = Arms::new(state, paths);
        if arms.amplitude == 0.0 {
            return Err(Error::invalid(
                "state",
                "coherent amplitude must be non-zero",
            ));
        }
        let sigma = spectrum.sigma_phi;
        let center = state.mean(paths);
        let b = paths.dispersion_sum();
        // Exceeds the true width: √(p² + q²) ≤ p + q.
        let width_bound = 1.0 / (2f64.sqrt() * sigma * arms.n) + 2f64.sqrt() * sigma * b.abs();
        let reach = 12.0 * width_bound;

        let inner_points = std::sync::atomic::AtomicUsize::new(0);
        let weight = |u: f64| -> Result<f64> {
            let tau = center + reach * u;
            let est =
                self.amplitude_estimate(state, spectrum, paths, tau, Complex64::new(1.0, 0.0))?;
            inner_points.fetch_add(est.points_used, std::sync::atomic::Ordering::Relaxed);
            Ok(est.value.norm_sqr())
        };
        let breakpoints: Vec<f64> = (0..=24).map(|k| -1.0 + k as f64 / 12.0).collect();
        let tol = Tolerance {
            abs: 0.0,
            rel: 1e-11,
        };
        // Two moments per pass, packed into the real and imaginary parts.
        let low = try_integrate(
            |u| weight(u).map(|w| Complex64::new(w, w * u)),
            &breakpoints,
            tol,
            self.spec.max_points,
        )?;
        let high = try_integrate(
            |u| weight(u).map(|w| Complex64::new(w * u * u, w * u * u * u)),
            &breakpoints,
            tol,
            self.spec.max_points,
        )?;

        let m0 = low.value.re;
        let mean_u = low.value.im / m0;
        let second_u = high.value.re / m0;
        let third_u = high.value.im / m0;
        let var_u = second_u - mean_u * mean_u;
        let third_central_u = third_u - 3.0 * mean_u * second_u + 2.0 * mean_u.powi(3);

        Ok(NumericMoments {
            mean: center + reach * mean_u,
            sigma: reach * var_u.sqrt(),
            third_central: reach.powi(3) * third_central_u,
            points_used: low.points_used + high.points_used + inner_points.into_inner(),
        })
    }
}

fn check_envelope(arms: &Arms, sigma: f64, tau: f64) -> Result<()> {
    let b = arms.beta1_x + arms.beta2_x;
    let chirp = arms.n * b.abs() * sigma * sigma;
    if chirp.is_nan() || chirp > MAX_CHIRP_PHASE {
        return Err(Error::Envelope(format!(
            "N|B|σ_φ² = {chirp:.3e} rad exceeds {MAX_CHIRP_PHASE:e}"
        )));
    }
    let zeta = tau - (arms.alpha1_x + arms.partner_sign * arms.alpha2_x);
    let tilt = arms.n * zeta.abs() * sigma;
    if tilt.is_nan() || tilt > MAX_TILT_PHASE {
        return Err(Error::Envelope(format!(
            "N|ζ|σ_φ = {tilt:.3e} rad exceeds {MAX_TILT_PHASE:e}"
        )));
    }
    Ok(())
}

/// Breakpoints on `[lo, hi]` such that the phase advance across every panel
/// stays within [`MAX_PANEL_PHASE`] and no panel is wider than `max_width`.
///
/// `rate` is `|dφ/dε|`, assumed convex (here `|linear|`), so its maximum
/// over a panel sits at an endpoint.
fn phase_breakpoints<R>(lo: f64, hi: f64, max_width: f64, rate: R) -> Vec<f64>
where
    R: Fn(f64) -> f64,
{
    let mut points = vec![lo];
    let mut p = lo;
    while p < hi {
        let mut w = (hi - p).min(max_width);
        for _ in 0..64 {
            let peak = rate(p).max(rate(p + w));
            if w * peak <= MAX_PANEL_PHASE {
                break;
            }
            w = MAX_PANEL_PHASE / peak;
        }
        // Guard against the fixed point stalling just above the limit.
        if w * rate(p).max(rate(p + w)) > MAX_PANEL_PHASE {
            w *= 0.5;
        }
        p = if hi - (p + w) < 1e-12 * max_width {
            hi
        } else {
            p + w
        };
        points.push(p);
    }
    points
}
