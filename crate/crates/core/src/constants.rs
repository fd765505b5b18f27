//! Exact SI constants.

use std::f64::consts::PI;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permeability μ₀ = 4π×10⁻⁷ H/m.
pub const MU_0: f64 = 4.0 * PI * 1e-7;

/// Vacuum permittivity ε₀ = 1/(μ₀c²), F/m.
pub const EPS_0: f64 = 1.0 / (MU_0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT);

/// Relative permittivity of air used by the built-in `air` material.
pub const AIR_EPS_R: f64 = 1.0006;

/// Free-space wavelength c/f in metres.
pub fn free_space_wavelength(freq_hz: f64) -> f64 {
    SPEED_OF_LIGHT / freq_hz
}
