use nalgebra::Matrix2;
use num_complex::Complex64;

use super::state::{ModeKey, PairTerm, TwoParticleState};
use crate::algebra::{max_entry, FourVector, SpinorMatrix};
use crate::error::Result;
use crate::propagate::InfluenceKernel;
use crate::spinors::block_bar;
use crate::states::Branch;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-particle evolution (1/i)·kernel restricted to the span of one key.
fn factor_matrix(kernel: &InfluenceKernel, key: &ModeKey) -> Matrix2<Complex64> {
    let block = key.block();
    let k = kernel
        .matrix(&key.p, &FourVector::ZERO)
        .expect("key momentum is validated");
    let gram = block_bar(&block) * block;
    let inv = gram.try_inverse().expect("spinor Gram matrix is ±I");
    inv * block_bar(&block) * k * block * -I
}

/// Applies (1/i)∫∫ Γ⁰_{which,which} term-wise: C → M_x C M_yᵀ, each factor evolving
/// as a single particle. Exchange symmetry is kept.
pub fn two_evolve(
    state: &TwoParticleState,
    tau: f64,
    tau_prime: f64,
    which: Branch,
) -> Result<TwoParticleState> {
    let kernel = InfluenceKernel::new(which, tau_prime - tau)?;
    let mut out = TwoParticleState::new(state.box_edge(), state.exchange());
    for t in state.terms() {
        let c = factor_matrix(&kernel, &t.x) * t.c * factor_matrix(&kernel, &t.y).transpose();
        if max_entry(&c) > 1e-12 * max_entry(&t.c) {
            out.push(PairTerm { c, ..*t });
        }
    }
    Ok(out)
}

/// Momentum-space two-particle kernel Γ_{which,which} = (1/i) Γ⁰_which ⊗ Γ⁰_which.
pub fn pair_kernel_matrix(
    which: Branch,
    delta_tau: f64,
    p_x: &FourVector,
    dx: &FourVector,
    p_y: &FourVector,
    dy: &FourVector,
) -> Result<nalgebra::SMatrix<Complex64, 16, 16>> {
    let k = InfluenceKernel::new(which, delta_tau)?;
    Ok(kron(&k.matrix(p_x, dx)?, &k.matrix(p_y, dy)?) * -I)
}

pub(crate) fn kron(a: &SpinorMatrix, b: &SpinorMatrix) -> nalgebra::SMatrix<Complex64, 16, 16> {
    nalgebra::SMatrix::<Complex64, 16, 16>::from_fn(|r, c| a[(r / 4, c / 4)] * b[(r % 4, c % 4)])
}

/// Residuals of the two-particle conjugation law for each kernel sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationResidual {
    /// |bar(Γ±±) − Γ∓∓(reversed)|: the law with a plus sign.
    pub plus_sign: f64,
    /// |bar(Γ±±) + Γ∓∓(reversed)|: the law with a minus sign.
    pub minus_sign: f64,
}

/// Compares the Dirac adjoint (γ⁰⊗γ⁰)Γ†(γ⁰⊗γ⁰) of Γ±± with Γ∓∓ at reversed
/// arguments over the given momentum pairs, for both signs of the law.
pub fn two_particle_conjugation_check(
    dx: &FourVector,
    dy: &FourVector,
    delta_tau: f64,
    momenta: &[(FourVector, FourVector)],
) -> Result<ConjugationResidual> {
    let g0 = crate::algebra::gamma(crate::algebra::Gamma::Zero);
    let g00 = kron(&g0, &g0);
    let mut plus_sign = 0.0_f64;
    let mut minus_sign = 0.0_f64;
    for which in [Branch::Forward, Branch::Backward] {
        for (px, py) in momenta {
            let k = pair_kernel_matrix(which, delta_tau, px, dx, py, dy)?;
            let adj = g00 * k.adjoint() * g00;
            let rev = pair_kernel_matrix(which.flip(), -delta_tau, px, &-*dx, py, &-*dy)?;
            plus_sign = plus_sign.max(max_entry(&(adj - rev)));
            minus_sign = minus_sign.max(max_entry(&(adj + rev)));
        }
    }
    Ok(ConjugationResidual {
        plus_sign,
        minus_sign,
    })
}
