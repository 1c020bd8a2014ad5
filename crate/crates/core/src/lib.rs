//! Arrival-time statistics of frequency-entangled N-photon states.
//!
//! Two beams carrying N photons each travel through separate dispersive
//! media to two detectors. For Gaussian spectra the distribution of the
//! difference (or sum) of mean detection times is Gaussian; this crate
//! provides the closed forms for that law, an independent quadrature
//! oracle for the underlying amplitude integrals, Monte Carlo samplers for
//! the quantum and classical estimators, and the media models (Taylor
//! coefficients, refractive index of air) that feed them.
//!
//! Units: time in fs, angular frequency in rad/fs, length in cm unless a
//! function says otherwise.

pub mod distributions;
pub mod error;
pub mod media;
pub mod montecarlo;
pub mod oracle;
pub mod spectral;
pub mod units;

pub use distributions::{StateKind, StateSpec, TimingDistribution, TimingVariable};
pub use error::{Error, Result};
pub use media::{AirConditions, MediumSegment, PathCoefficients, PathPair};
pub use spectral::GaussianSpectrum;
