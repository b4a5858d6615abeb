//! Physical constants and numerical defaults. Natural units ħ = c = 1, energies in MeV.

use std::f64::consts::PI;

/// Electron rest mass in MeV (CODATA 2018).
pub const ELECTRON_MASS: f64 = 0.510_998_95;

/// Fine-structure constant.
pub const ALPHA: f64 = 1.0 / 137.035_999;

/// Planck constant in MeV·s, used to convert energy shifts to frequencies.
pub const PLANCK_MEV_S: f64 = 4.135_667_696e-21;

/// Absolute tolerance for algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Relative tolerance for quadrature-derived quantities.
pub const QUADRATURE_TOL: f64 = 1e-9;

/// Box edge used when a state document carries no entries to read it from.
/// With L = 2π the box normalization coincides with the continuum one.
pub const DEFAULT_BOX_EDGE: f64 = 2.0 * PI;

/// Unit charge in Heaviside–Lorentz units, e² = 4πα.
pub fn unit_charge() -> f64 {
    (4.0 * PI * ALPHA).sqrt()
}

/// Converts an energy in MeV to a frequency in MHz.
pub fn mev_to_mhz(energy: f64) -> f64 {
    energy / PLANCK_MEV_S / 1e6
}
