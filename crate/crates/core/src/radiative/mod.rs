//! Photon and substitution propagators, radiative endpoints and the current
//! identities behind the axial anomaly.

mod anomaly;
mod propagators;
mod uehling;
mod vertex;

pub use anomaly::{
    anomaly_density, anomaly_rhs, axial_divergence_tree, epsilon_contraction,
    vector_divergence_check, FieldConfiguration, FieldTensor,
};
pub use propagators::{
    photon_propagator, self_potential, self_potential_spectrum, substitution_propagator,
};
pub use uehling::{
    hydrogenic_radial, spectral_integral, uehling_potential, uehling_potential_with, uehling_shift,
    EnergyShift, UehlingRoute,
};
pub use vertex::{f2_anomalous_moment, f2_form_factor};

use serde::{Deserialize, Serialize};

/// One computed quantity with its units and numerical error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub quantity: String,
    pub value: f64,
    pub units: String,
    pub est_error: f64,
    pub quadrature_panels: usize,
}
