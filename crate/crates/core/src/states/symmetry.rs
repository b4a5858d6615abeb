//! Discrete symmetries acting on spectral states.
//!
//! Each map is applied to the snapshot mode by mode and the image spinor is
//! re-expressed in the basis of its new (momentum, branch) pair.

use num_complex::Complex64;

use super::{Branch, Mode, SpectralState};
use crate::algebra::{gamma, BiSpinor, FourVector, Gamma, SpinorMatrix};

/// Global phase produced by applying a map twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryPhase {
    Plus,
    Minus,
}

impl SymmetryPhase {
    pub fn value(self) -> f64 {
        match self {
            SymmetryPhase::Plus => 1.0,
            SymmetryPhase::Minus => -1.0,
        }
    }
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn spatial_reflection(p: &FourVector) -> FourVector {
    FourVector::new(p[0], -p[1], -p[2], -p[3])
}

fn map_state(
    state: &SpectralState,
    matrix: &SpinorMatrix,
    antilinear: bool,
    momentum: impl Fn(&FourVector) -> FourVector,
    branch: impl Fn(Branch) -> Branch,
) -> SpectralState {
    let modes = state.modes().iter().map(|m| {
        let w = m.spinor();
        let w: BiSpinor = if antilinear { w.map(|z| z.conj()) } else { w };
        let (image, residual) = Mode::from_spinor(momentum(&m.p), branch(m.branch), &(matrix * w))
            .expect("image momentum is timelike and massive");
        debug_assert!(residual <= 1e-10 * m.a.norm().max(1.0));
        image
    });
    SpectralState::from_modes(state.box_edge(), modes)
}

/// Cψ(x, τ) = iγ²ψ*(x, −τ). Sends p → −p and flips the branch; squares to +1.
pub fn charge_conjugate(state: &SpectralState) -> SpectralState {
    map_state(state, &(gamma(Gamma::Two) * I), true, |p| -*p, Branch::flip)
}

/// Pψ(t, x, τ) = γ⁰ψ(t, −x, τ). Squares to +1.
pub fn parity(state: &SpectralState) -> SpectralState {
    map_state(state, &gamma(Gamma::Zero), false, spatial_reflection, |b| b)
}

/// Tψ(t, x, τ) = iγ¹γ³ψ*(−t, x, −τ). Squares to −1.
pub fn time_reverse(state: &SpectralState) -> SpectralState {
    let m = gamma(Gamma::One) * gamma(Gamma::Three) * I;
    map_state(state, &m, true, spatial_reflection, |b| b)
}

/// (TPC)ψ(x, τ) = −iγ⁵ψ(−x, τ). Sends p → −p and flips the branch; squares to −1.
pub fn tpc(state: &SpectralState) -> SpectralState {
    map_state(
        state,
        &(gamma(Gamma::Five) * -I),
        false,
        |p| -*p,
        Branch::flip,
    )
}
