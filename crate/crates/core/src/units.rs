//! Unit conversions at the API boundary.

use std::f64::consts::PI;

/// Speed of light in cm/fs.
pub const SPEED_OF_LIGHT_CM_PER_FS: f64 = 2.997_924_58e-5;

/// Speed of light in nm/fs.
pub const SPEED_OF_LIGHT_NM_PER_FS: f64 = 299.792_458;

pub const STANDARD_PRESSURE_PA: f64 = 101_325.0;

/// Converts an angular frequency from rad/s to rad/fs.
pub fn rad_per_s_to_rad_per_fs(value: f64) -> f64 {
    value * 1e-15
}

pub fn rad_per_fs_to_rad_per_s(value: f64) -> f64 {
    value * 1e15
}

/// Vacuum wavelength (nm) to angular frequency (rad/fs).
pub fn wavelength_nm_to_omega(wavelength_nm: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS / wavelength_nm
}

/// Angular frequency (rad/fs) to vacuum wavelength (nm).
pub fn omega_to_wavelength_nm(omega: f64) -> f64 {
    2.0 * PI * SPEED_OF_LIGHT_NM_PER_FS / omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn wavelength_round_trip() {
        let omega = wavelength_nm_to_omega(800.0);
        assert_relative_eq!(omega, 2.354_564_4, max_relative = 1e-6);
        assert_relative_eq!(omega_to_wavelength_nm(omega), 800.0, max_relative = 1e-14);
    }

    #[test]
    fn rad_per_s_scaling() {
        assert_relative_eq!(
            rad_per_s_to_rad_per_fs(3.7e11),
            3.7e-4,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            rad_per_fs_to_rad_per_s(3.7e-4),
            3.7e11,
            max_relative = 1e-15
        );
    }
}
