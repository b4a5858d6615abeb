//! Two-particle tensor-product states, their evolution and currents, the
//! first-order two-particle S-matrix and the Bethe–Salpeter Born step.

mod bethe_salpeter;
mod currents;
mod evolve;
mod smatrix;
mod state;

pub use bethe_salpeter::{
    born_series, bs_born_step, dominant_eigenvalue, pair_propagator, BsVector, InteractionKernel,
    PairMatrix, PairSpinor,
};
pub use currents::two_currents;
pub use evolve::{
    pair_kernel_matrix, two_evolve, two_particle_conjugation_check, ConjugationResidual,
};
pub use smatrix::{s2_first_order, semiclassical_potential, TwoBodyAmplitude};
pub use state::{
    antisymmetrize, symmetrize, two_inner_product, Exchange, KeyRecord, ModeKey, PairRecord,
    PairTerm, TwoParticleState,
};
