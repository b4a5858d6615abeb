use num_complex::Complex64;

use crate::algebra::{identity, slash, ComplexFourVector, FourVector, SpinorMatrix};
use crate::constants::ALGEBRA_TOL;
use crate::error::{Error, Result};
use crate::states::CurrentSpectrum;

fn scale_of(k: &FourVector) -> f64 {
    k.0.iter().map(|x| x * x).sum::<f64>()
}

/// 1/k² with k² = k·k.
pub fn photon_propagator(k: &FourVector) -> Result<f64> {
    let dot = k.dot(k);
    if dot.abs() <= ALGEBRA_TOL * scale_of(k) || dot == 0.0 {
        return Err(Error::OnLightCone { dot });
    }
    Ok(1.0 / dot)
}

/// Ã^μ(k) = e J̃^μ(k)/k².
pub fn self_potential(
    current: &ComplexFourVector,
    k: &FourVector,
    charge: f64,
) -> Result<ComplexFourVector> {
    let d = photon_propagator(k)?;
    Ok(current.scale(Complex64::new(charge * d, 0.0)))
}

/// Potential sourced by a spectral current, one Picard step: each component at
/// wavevector k ≠ 0 becomes e C/k². The constant (k = 0) component carries no
/// field in a periodic box and is dropped.
pub fn self_potential_spectrum(
    current: &CurrentSpectrum,
    charge: f64,
) -> Result<Vec<(FourVector, ComplexFourVector)>> {
    let mut out = Vec::new();
    for (k, c) in &current.components {
        if k.max_abs() == 0.0 {
            continue;
        }
        out.push((*k, self_potential(c, k, charge)?));
    }
    Ok(out)
}

/// (m̄I₄ − slash r)/(m̄² + r·r).
pub fn substitution_propagator(r: &FourVector, mass: f64) -> Result<SpinorMatrix> {
    if !(mass > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "substitution mass must be positive, got {mass}"
        )));
    }
    let value = mass * mass + r.dot(r);
    if value.abs() <= ALGEBRA_TOL * (mass * mass + scale_of(r)) {
        return Err(Error::OnMassShell { value });
    }
    Ok((identity() * Complex64::new(mass, 0.0) - slash(r)) * Complex64::new(1.0 / value, 0.0))
}
