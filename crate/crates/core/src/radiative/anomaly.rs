//! Vector and axial current identities and the anomaly source term.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{FourVector, METRIC};
use crate::error::{Error, Result};
use crate::states::{
    axial_current, concatenated_current, pseudoscalar_density, SpectralState, UniformGrid,
};

/// Contravariant field strength F^{μν} with F^{0j} = E^j and F^{ij} = ε_ijk B^k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTensor([[f64; 4]; 4]);

impl FieldTensor {
    pub fn new(f: [[f64; 4]; 4]) -> Result<FieldTensor> {
        for mu in 0..4 {
            for nu in 0..4 {
                if f[mu][nu] != -f[nu][mu] {
                    return Err(Error::InvalidArgument(format!(
                        "F is not antisymmetric at ({mu}, {nu})"
                    )));
                }
            }
        }
        Ok(FieldTensor(f))
    }

    pub fn from_fields(e: [f64; 3], b: [f64; 3]) -> FieldTensor {
        let mut f = [[0.0; 4]; 4];
        for j in 0..3 {
            f[0][j + 1] = e[j];
            f[j + 1][0] = -e[j];
        }
        f[1][2] = b[2];
        f[2][1] = -b[2];
        f[2][3] = b[0];
        f[3][2] = -b[0];
        f[3][1] = b[1];
        f[1][3] = -b[1];
        FieldTensor(f)
    }

    pub fn components(&self) -> [[f64; 4]; 4] {
        self.0
    }

    /// F_{μν} = g_{μμ} g_{νν} F^{μν}.
    pub fn lowered(&self) -> [[f64; 4]; 4] {
        let mut out = self.0;
        for (mu, row) in out.iter_mut().enumerate() {
            for (nu, v) in row.iter_mut().enumerate() {
                *v *= METRIC[mu] * METRIC[nu];
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> FieldTensor {
        FieldTensor(self.0.map(|row| row.map(|v| v * s)))
    }
}

/// A constant field or samples of a field at given events.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldConfiguration {
    Constant(FieldTensor),
    Sampled(Vec<(FourVector, FieldTensor)>),
}

/// Sign of a permutation of 0..4 by inversion count.
fn permutation_sign(p: &[usize; 4]) -> f64 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [usize; 4]) -> bool {
    let Some(i) = (0..3).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..4)
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// ε^{μνρσ} F_{μν} F_{ρσ} with ε⁰¹²³ = +1, summed over the 24 permutations in
/// lexicographic order.
pub fn epsilon_contraction(f: &FieldTensor) -> f64 {
    let low = f.lowered();
    let mut p = [0, 1, 2, 3];
    let mut sum = 0.0;
    loop {
        sum += permutation_sign(&p) * low[p[0]][p[1]] * low[p[2]][p[3]];
        if !next_permutation(&mut p) {
            break;
        }
    }
    sum
}

/// −e²/(4π)² ε^{μνρσ}F_{μν}F_{ρσ} at one event.
pub fn anomaly_density(f: &FieldTensor, charge: f64) -> f64 {
    -(charge * charge) / (16.0 * PI * PI) * epsilon_contraction(f)
}

/// The anomaly source term for each sample (one value for a constant field).
pub fn anomaly_rhs(field: &FieldConfiguration, charge: f64) -> Vec<f64> {
    match field {
        FieldConfiguration::Constant(f) => vec![anomaly_density(f, charge)],
        FieldConfiguration::Sampled(samples) => samples
            .iter()
            .map(|(_, f)| anomaly_density(f, charge))
            .collect(),
    }
}

/// max over the grid of |∂_μ J^μ| for the concatenated current, evaluated spectrally.
pub fn vector_divergence_check(state: &SpectralState, grid: &UniformGrid) -> f64 {
    let div = concatenated_current(state).divergence();
    grid.points()
        .map(|x| div.evaluate(&x).norm())
        .fold(0.0, f64::max)
}

/// Both sides of the tree-level axial identity on a grid:
/// ∂_μ J₅^μ and −2i m_e ∫ψ̄γ⁵ψ dτ.
pub fn axial_divergence_tree(
    state: &SpectralState,
    mass: f64,
    grid: &UniformGrid,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let rhs = pseudoscalar_density(state, mass)?;
    let lhs = axial_current(state).divergence();
    Ok(grid
        .points()
        .map(|x| (lhs.evaluate(&x), rhs.evaluate(&x)))
        .unzip())
}
