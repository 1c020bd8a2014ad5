use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("wavelength {wavelength_nm} nm outside the supported range {min_nm}-{max_nm} nm")]
    WavelengthOutOfRange {
        wavelength_nm: f64,
        min_nm: f64,
        max_nm: f64,
    },

    #[error("no transition: dispersion fully cancelled (B = 0)")]
    NoTransition,

    #[error(
        "finite-difference step {step:e} rad/fs loses precision to rounding \
         (estimated relative error {rounding:e}); try step {suggested:e} rad/fs"
    )]
    StepTooSmall {
        step: f64,
        rounding: f64,
        suggested: f64,
    },

    #[error(
        "quadrature did not reach tolerance {target:e} within {max_points} points \
         (achieved error estimate {achieved:e} after {points_used} points)"
    )]
    Convergence {
        achieved: f64,
        target: f64,
        points_used: usize,
        max_points: usize,
    },

    #[error("outside numeric envelope: {0}")]
    Envelope(String),

    #[error("materials catalog: {0}")]
    Catalog(String),

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
