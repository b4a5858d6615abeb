//! τ-integrated bilinears of spectral states.
//!
//! Integrating ψ̄Γψ over τ keeps only pairs of modes with equal τ-frequency and
//! produces a factor T_τ, which is carried symbolically: every spectrum here is per
//! unit T_τ. A spectrum is a finite sum Σ C e^{ik·x}.

use num_complex::Complex64;

use super::{check_box, same_frequency, same_momentum, SpectralState, SymbolicScale};
use crate::algebra::{bar, gamma, gamma_mu, ComplexFourVector, FourVector, Gamma, SpinorMatrix};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spectral four-current Σ_k C^μ_k e^{ik·x}, per unit of `per_unit`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentSpectrum {
    pub components: Vec<(FourVector, ComplexFourVector)>,
    pub per_unit: SymbolicScale,
}

/// Spectral scalar density Σ_k c_k e^{ik·x}, per unit of `per_unit`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSpectrum {
    pub components: Vec<(FourVector, Complex64)>,
    pub per_unit: SymbolicScale,
}

fn phase(k: &FourVector, x: &FourVector) -> Complex64 {
    Complex64::from_polar(1.0, k.dot(x))
}

impl CurrentSpectrum {
    pub(crate) fn push_component(&mut self, k: FourVector, c: ComplexFourVector) {
        match self
            .components
            .iter_mut()
            .find(|(q, _)| same_momentum(q, &k))
        {
            Some((_, existing)) => *existing = *existing + c,
            None => self.components.push((k, c)),
        }
    }

    pub fn evaluate(&self, x: &FourVector) -> ComplexFourVector {
        self.components
            .iter()
            .fold(ComplexFourVector::ZERO, |acc, (k, c)| {
                acc + c.scale(phase(k, x))
            })
    }

    /// ∂_μ J^μ = Σ i k_μ C^μ e^{ik·x}.
    pub fn divergence(&self) -> ScalarSpectrum {
        ScalarSpectrum {
            components: self
                .components
                .iter()
                .map(|(k, c)| (*k, I * c.contract(k)))
                .collect(),
            per_unit: self.per_unit,
        }
    }

    pub fn sample(&self, grid: &UniformGrid) -> CurrentField {
        CurrentField {
            grid: grid.clone(),
            values: grid.points().map(|x| self.evaluate(&x)).collect(),
        }
    }

    pub fn max_coefficient(&self) -> f64 {
        self.components
            .iter()
            .map(|(_, c)| c.max_abs())
            .fold(0.0, f64::max)
    }
}

impl ScalarSpectrum {
    fn push(&mut self, k: FourVector, c: Complex64) {
        match self
            .components
            .iter_mut()
            .find(|(q, _)| same_momentum(q, &k))
        {
            Some((_, existing)) => *existing += c,
            None => self.components.push((k, c)),
        }
    }

    pub fn evaluate(&self, x: &FourVector) -> Complex64 {
        self.components.iter().map(|(k, c)| c * phase(k, x)).sum()
    }

    pub fn scaled(&self, s: Complex64) -> ScalarSpectrum {
        ScalarSpectrum {
            components: self.components.iter().map(|(k, c)| (*k, c * s)).collect(),
            per_unit: self.per_unit,
        }
    }

    pub fn max_coefficient(&self) -> f64 {
        self.components
            .iter()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient difference after matching wavevectors.
    pub fn distance(&self, other: &ScalarSpectrum) -> f64 {
        let mut diff = self.clone();
        for (k, c) in &other.components {
            diff.push(*k, -c);
        }
        diff.max_coefficient()
    }
}

fn bilinear_current(
    fin: &SpectralState,
    init: &SpectralState,
    vertex: impl Fn(usize) -> SpinorMatrix,
) -> Result<CurrentSpectrum> {
    check_box(fin.box_edge(), init.box_edge())?;
    let norm = fin.box_edge().powi(4);
    let vertices: Vec<SpinorMatrix> = (0..4).map(&vertex).collect();
    let mut out = CurrentSpectrum {
        components: Vec::new(),
        per_unit: SymbolicScale::Tau,
    };
    for mf in fin.modes() {
        let wf = bar(&mf.spinor());
        for mi in init.modes() {
            if !same_frequency(mf.frequency(), mi.frequency()) {
                continue;
            }
            let wi = mi.spinor();
            let mut c = ComplexFourVector::ZERO;
            for (mu, g) in vertices.iter().enumerate() {
                c.0[mu] = (wf * g * wi)[(0, 0)] / norm;
            }
            out.push_component(mi.p - mf.p, c);
        }
    }
    Ok(out)
}

/// ∫ φ̄_f γ^μ φ_i dτ for two states sharing a box (the Møller-type current).
pub fn transition_current(fin: &SpectralState, init: &SpectralState) -> Result<CurrentSpectrum> {
    bilinear_current(fin, init, gamma_mu)
}

/// J^μ = ∫ ψ̄γ^μψ dτ. Conserved for any state because only equal-mass pairs survive.
pub fn concatenated_current(state: &SpectralState) -> CurrentSpectrum {
    transition_current(state, state).expect("a state shares its own box")
}

/// J₅^μ = ∫ ψ̄γ⁵γ^μψ dτ.
pub fn axial_current(state: &SpectralState) -> CurrentSpectrum {
    let g5 = gamma(Gamma::Five);
    bilinear_current(state, state, |mu| g5 * gamma_mu(mu)).expect("a state shares its own box")
}

/// −2i m ∫ ψ̄γ⁵ψ dτ, the divergence of [`axial_current`] for states whose modes all
/// carry τ-frequency +m (sharp mass m in S₊).
pub fn pseudoscalar_density(state: &SpectralState, mass: f64) -> Result<ScalarSpectrum> {
    for m in state.modes() {
        let found = m.frequency();
        if !same_frequency(found, mass) {
            return Err(Error::MassMismatch {
                expected: mass,
                found,
            });
        }
    }
    let g5 = gamma(Gamma::Five);
    let norm = state.box_edge().powi(4);
    let mut out = ScalarSpectrum {
        components: Vec::new(),
        per_unit: SymbolicScale::Tau,
    };
    for mf in state.modes() {
        let wf = bar(&mf.spinor());
        for mi in state.modes() {
            let c = (wf * g5 * mi.spinor())[(0, 0)] / norm;
            out.push(mi.p - mf.p, Complex64::new(0.0, -2.0 * mass) * c);
        }
    }
    Ok(out)
}

/// Regular lattice of spacetime points, x = origin + n ⊙ spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    pub origin: FourVector,
    pub spacing: [f64; 4],
    pub counts: [usize; 4],
}

impl UniformGrid {
    pub fn new(origin: FourVector, spacing: [f64; 4], counts: [usize; 4]) -> Result<UniformGrid> {
        if spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidArgument(
                "grid spacing must be positive".into(),
            ));
        }
        if counts.iter().any(|&n| n < 5) {
            return Err(Error::InvalidArgument(
                "fourth-order differences need at least 5 points per axis".into(),
            ));
        }
        Ok(UniformGrid {
            origin,
            spacing,
            counts,
        })
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn flat(&self, n: [usize; 4]) -> usize {
        ((n[0] * self.counts[1] + n[1]) * self.counts[2] + n[2]) * self.counts[3] + n[3]
    }

    fn unflat(&self, mut i: usize) -> [usize; 4] {
        let mut n = [0; 4];
        for axis in (0..4).rev() {
            n[axis] = i % self.counts[axis];
            i /= self.counts[axis];
        }
        n
    }

    pub fn point(&self, n: [usize; 4]) -> FourVector {
        FourVector(std::array::from_fn(|a| {
            self.origin[a] + n[a] as f64 * self.spacing[a]
        }))
    }

    pub fn points(&self) -> impl Iterator<Item = FourVector> + '_ {
        (0..self.len()).map(|i| self.point(self.unflat(i)))
    }
}

/// A current sampled on a [`UniformGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentField {
    pub grid: UniformGrid,
    pub values: Vec<ComplexFourVector>,
}

impl CurrentField {
    /// Fourth-order central-difference divergence at every point at least two
    /// nodes away from each face, paired with the point.
    pub fn divergence_fd(&self) -> Vec<(FourVector, Complex64)> {
        let g = &self.grid;
        let mut out = Vec::new();
        for i in 0..g.len() {
            let n = g.unflat(i);
            if (0..4).any(|a| n[a] < 2 || n[a] + 2 >= g.counts[a]) {
                continue;
            }
            let mut div = Complex64::new(0.0, 0.0);
            for axis in 0..4 {
                let at = |offset: isize| {
                    let mut m = n;
                    m[axis] = (n[axis] as isize + offset) as usize;
                    self.values[g.flat(m)].0[axis]
                };
                div += (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * g.spacing[axis]);
            }
            out.push((g.point(n), div));
        }
        out
    }
}
