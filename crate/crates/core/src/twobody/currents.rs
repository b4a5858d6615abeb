use super::state::{contract, key_gram, TwoParticleState};
use crate::algebra::{gamma_mu, ComplexFourVector};
use crate::spinors::block_bar;
use crate::states::{same_frequency, CurrentSpectrum, SymbolicScale};
use nalgebra::Matrix2;

/// J₁^μ(x) = ∫dτ d⁴y Φ̄(γ^μ ⊗ I)Φ: the current of the first factor with the
/// second marginalized. Only term pairs with the same y key and equal τ-frequency
/// of the x factor survive.
fn first_factor_current(state: &TwoParticleState) -> CurrentSpectrum {
    let norm = state.box_edge().powi(4);
    let mut out = CurrentSpectrum {
        components: Vec::new(),
        per_unit: SymbolicScale::Tau,
    };
    for tj in state.terms() {
        let bar_x = block_bar(&tj.x.block());
        for tk in state.terms() {
            if !same_frequency(tj.x.frequency(), tk.x.frequency()) {
                continue;
            }
            let gy = key_gram(&tj.y, &tk.y);
            if gy == Matrix2::zeros() {
                continue;
            }
            let weights = tj.c.map(|z| z.conj()) * gy * tk.c.transpose();
            let ux = tk.x.block();
            let mut c = ComplexFourVector::ZERO;
            for mu in 0..4 {
                let g = bar_x * gamma_mu(mu) * ux;
                c.0[mu] = contract(&weights, &g) / norm;
            }
            out.push_component(tk.x.p - tj.x.p, c);
        }
    }
    out
}

/// (J₁, J₂): each particle's concatenated current with the other marginalized.
pub fn two_currents(state: &TwoParticleState) -> (CurrentSpectrum, CurrentSpectrum) {
    (
        first_factor_current(state),
        first_factor_current(&state.swapped()),
    )
}
