use nalgebra::Matrix2;
use num_complex::Complex64;

use super::state::{contract, key_gram, ModeKey, TwoParticleState};
use crate::algebra::{slash_complex, ComplexFourVector, FourVector};
use crate::error::{Error, Result};
use crate::radiative::self_potential_spectrum;
use crate::scattering::{on_mass_shell, scattering_factors, ExternalPotential, ReducedAmplitude};
use crate::spinors::block_bar;
use crate::states::{
    check_box, classify_subspace, same_momentum, transition_current, Branch, SpectralState,
    Subspace,
};

/// Zeroth- and first-order two-particle S-matrix elements.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyAmplitude {
    /// ⟨Φ_f, Φ_i⟩.
    pub zeroth: Complex64,
    /// e₁(1 scattered)(2 overlap) + e₂(1 overlap)(2 scattered), prefactor i/L³.
    pub first: ReducedAmplitude,
}

fn require_particles(state: &TwoParticleState) -> Result<()> {
    for t in state.terms() {
        for k in [t.x, t.y] {
            let m = crate::states::Mode {
                p: k.p,
                branch: k.branch,
                a: nalgebra::Vector2::zeros(),
            };
            if k.branch != Branch::Forward || classify_subspace(&m) != Subspace::Plus {
                return Err(Error::SubspaceViolation);
            }
        }
    }
    Ok(())
}

/// Ū_f slash(Ã(p_f − p_i)) U_i between two keys, zero off the mass or energy shell.
fn transition_matrix(
    fin: &ModeKey,
    init: &ModeKey,
    pot: &ExternalPotential,
) -> Result<Matrix2<Complex64>> {
    let mf = fin.p.mass()?;
    let mi = init.p.mass()?;
    if !on_mass_shell(mf, mi)
        || (pot.is_static() && !on_mass_shell(fin.p.energy(), init.p.energy()))
    {
        return Ok(Matrix2::zeros());
    }
    let a = pot.fourier(&(fin.p - init.p))?;
    Ok(block_bar(&fin.block()) * slash_complex(&a) * init.block())
}

/// First-order S-matrix between two-particle states in S₊⊗S₊, each particle
/// scattered by its own external potential while the other is a spectator.
pub fn s2_first_order(
    initial: &TwoParticleState,
    fin: &TwoParticleState,
    pot_x: &ExternalPotential,
    charge_x: f64,
    pot_y: &ExternalPotential,
    charge_y: f64,
) -> Result<TwoBodyAmplitude> {
    check_box(initial.box_edge(), fin.box_edge())?;
    require_particles(initial)?;
    require_particles(fin)?;
    let mut zeroth = Complex64::new(0.0, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    for tf in fin.terms() {
        for ti in initial.terms() {
            let gx = key_gram(&tf.x, &ti.x);
            let gy = key_gram(&tf.y, &ti.y);
            zeroth += contract(&(tf.c.adjoint() * gx * ti.c), &gy);
            if same_momentum(&tf.y.p, &ti.y.p) {
                let ax = transition_matrix(&tf.x, &ti.x, pot_x)?;
                value += charge_x * contract(&(tf.c.adjoint() * ax * ti.c), &gy);
            }
            if same_momentum(&tf.x.p, &ti.x.p) {
                let ay = transition_matrix(&tf.y, &ti.y, pot_y)?;
                value += charge_y * contract(&(tf.c.adjoint() * gx * ti.c), &ay);
            }
        }
    }
    Ok(TwoBodyAmplitude {
        zeroth,
        first: ReducedAmplitude {
            value,
            prefactor: Complex64::new(0.0, 1.0 / initial.box_edge().powi(3)),
            stripped: scattering_factors(pot_x.is_static() && pot_y.is_static()),
            vanishing: None,
        },
    })
}

/// The potential radiated by the transition current ∫φ̄_f γ φ_i dτ of a source
/// particle, after one Picard step. Momentum transfers absent from the source
/// spectrum see zero field.
pub fn semiclassical_potential(
    source_final: &SpectralState,
    source_initial: &SpectralState,
    charge: f64,
) -> Result<ExternalPotential> {
    let current = transition_current(source_final, source_initial)?;
    let spectrum = self_potential_spectrum(&current, charge)?;
    Ok(ExternalPotential::custom(false, move |dp: &FourVector| {
        Ok(spectrum
            .iter()
            .find(|(k, _)| same_momentum(k, dp))
            .map_or(ComplexFourVector::ZERO, |(_, a)| *a))
    }))
}
