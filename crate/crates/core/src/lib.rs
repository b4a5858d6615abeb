//! Numerics for the Dirac equation with an invariant evolution parameter τ:
//! spinor algebra, spectral free evolution, first-order scattering, two-particle
//! states and the radiative endpoints.

pub mod algebra;
pub mod constants;
pub mod error;
pub mod propagate;
pub mod quadrature;
pub mod radiative;
pub mod scattering;
pub mod spinors;
pub mod states;
pub mod twobody;
pub mod verify;

pub use algebra::{BiSpinor, ComplexFourVector, FourVector, Gamma, SpinorMatrix};
pub use error::{Error, Result};
pub use propagate::{free_evolve, semigroup_compose, InfluenceKernel};
pub use scattering::{ExternalPotential, ReducedAmplitude};
pub use spinors::SpinorBlock;
pub use states::{Branch, Mode, SpectralState, Subspace};
pub use twobody::{Exchange, TwoParticleState};
