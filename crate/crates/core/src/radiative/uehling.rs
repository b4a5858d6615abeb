//! Vacuum-polarization correction to the Coulomb potential and its first-order
//! shift of hydrogenic levels.
//!
//! U(r) = −(Zα/r)(2α/3π) ∫₁^∞ dt e^{−2mrt} (1 + 1/2t²) √(t² − 1)/t².

use std::cell::Cell;
use std::f64::consts::PI;

use crate::constants::{mev_to_mhz, ALPHA, ELECTRON_MASS};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_to_infinity, Quadrature, QuadratureOptions};

/// Change of variables used for the spectral integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UehlingRoute {
    /// t = 1 + s².
    Quadratic,
    /// t = cosh θ.
    Hyperbolic,
}

fn weight(t: f64) -> f64 {
    (1.0 + 0.5 / (t * t)) / (t * t)
}

const SPECTRAL_OPTIONS: QuadratureOptions = QuadratureOptions {
    rel_tol: 1e-11,
    abs_tol: 1e-300,
    max_panels: 4000,
};

/// ∫₁^∞ dt e^{−x t}(1 + 1/2t²)√(t²−1)/t² with x = 2 m r, via the chosen route.
pub fn spectral_integral(x: f64, route: UehlingRoute) -> Result<Quadrature> {
    match route {
        UehlingRoute::Quadratic => integrate_to_infinity(
            |s| {
                let t = 1.0 + s * s;
                2.0 * s * s * (2.0 + s * s).sqrt() * (-x * t).exp() * weight(t)
            },
            0.0,
            SPECTRAL_OPTIONS,
        ),
        UehlingRoute::Hyperbolic => integrate_to_infinity(
            |theta: f64| {
                let t = theta.cosh();
                let sh = theta.sinh();
                sh * sh * (-x * t).exp() * weight(t)
            },
            0.0,
            SPECTRAL_OPTIONS,
        ),
    }
}

/// U(r) in MeV for a point nucleus of charge Z, r in MeV⁻¹.
pub fn uehling_potential_with(r: f64, z: f64, route: UehlingRoute) -> Result<Quadrature> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::NonpositiveRadius(r));
    }
    let q = spectral_integral(2.0 * ELECTRON_MASS * r, route)?;
    let scale = -(z * ALPHA / r) * (2.0 * ALPHA / (3.0 * PI));
    Ok(Quadrature {
        value: scale * q.value,
        error: scale.abs() * q.error,
        panels: q.panels,
    })
}

/// U(r) in MeV.
pub fn uehling_potential(r: f64, z: f64) -> Result<f64> {
    Ok(uehling_potential_with(r, z, UehlingRoute::Quadratic)?.value)
}

/// Nonrelativistic hydrogenic radial function R_nl(r) for n ≤ 2.
pub fn hydrogenic_radial(n: u32, l: u32, z: f64, r: f64) -> Result<f64> {
    let a = 1.0 / (z * ALPHA * ELECTRON_MASS);
    let x = r / a;
    match (n, l) {
        (1, 0) => Ok(2.0 * a.powf(-1.5) * (-x).exp()),
        (2, 0) => Ok(2.0 * (2.0 * a).powf(-1.5) * (1.0 - x / 2.0) * (-x / 2.0).exp()),
        (2, 1) => Ok((2.0 * a).powf(-1.5) * x / 3f64.sqrt() * (-x / 2.0).exp()),
        _ => Err(Error::UnsupportedState { n, l }),
    }
}

/// First-order level shift from the Uehling potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyShift {
    pub mev: f64,
    pub mhz: f64,
    pub est_error_mev: f64,
    pub panels: usize,
}

/// Panel edges for the radial integral, in units of the Compton wavelength.
const RADIAL_BREAKS: [f64; 8] = [0.0, 0.01, 0.1, 0.5, 1.5, 4.0, 10.0, 30.0];

/// ΔE = ∫ |R_nl|² U(r) r² dr for (n, l) ∈ {(1,0), (2,0), (2,1)}.
pub fn uehling_shift(n: u32, l: u32, z: f64) -> Result<EnergyShift> {
    hydrogenic_radial(n, l, z, 1.0)?;
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        let radial = hydrogenic_radial(n, l, z, r).unwrap_or(0.0);
        match uehling_potential_with(r, z, UehlingRoute::Quadratic) {
            Ok(u) => radial * radial * u.value * r * r,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let opts = QuadratureOptions {
        rel_tol: 1e-9,
        abs_tol: 1e-300,
        max_panels: 500,
    };
    let mut total = 0.0;
    let mut error = 0.0;
    let mut panels = 0;
    for w in RADIAL_BREAKS.windows(2) {
        let q = integrate(integrand, w[0] / ELECTRON_MASS, w[1] / ELECTRON_MASS, opts)?;
        total += q.value;
        error += q.error;
        panels += q.panels;
    }
    if let Some(e) = failure.take() {
        return Err(e);
    }
    error += total.abs() * 1e-10;
    Ok(EnergyShift {
        mev: total,
        mhz: mev_to_mhz(total),
        est_error_mev: error,
        panels,
    })
}
