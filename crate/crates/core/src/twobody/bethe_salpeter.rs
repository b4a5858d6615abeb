//! Born iteration of the inhomogeneous Bethe–Salpeter equation on a finite grid
//! of momentum pairs.
//!
//! After the mass Fourier transform the combined free kernel at pair (p_x, p_y) is
//! Γ⁰(m) = 2/(m − m_x − m_y) · 𝓔₊(p_x) ⊗ 𝓔₊(p_y), with 𝓔₊(p) = (m_p − slash p)/2m_p.
//! The second factor is taken at y′ − y″.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::evolve::kron;
use crate::algebra::{identity, slash, FourVector};
use crate::error::{Error, Result};
use crate::spinors::kinematics;
use crate::states::same_momentum;

pub type PairSpinor = SVector<Complex64, 16>;
pub type PairMatrix = SMatrix<Complex64, 16, 16>;

/// Two-particle spectral vector: one 16-component spinor per momentum pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BsVector {
    pub grid: Vec<(FourVector, FourVector)>,
    pub values: Vec<PairSpinor>,
}

impl BsVector {
    pub fn new(grid: Vec<(FourVector, FourVector)>, values: Vec<PairSpinor>) -> Result<BsVector> {
        if grid.len() != values.len() {
            return Err(Error::GridIncompatible(format!(
                "{} grid pairs but {} spinors",
                grid.len(),
                values.len()
            )));
        }
        Ok(BsVector { grid, values })
    }

    pub fn zeros_like(&self) -> BsVector {
        BsVector {
            grid: self.grid.clone(),
            values: vec![PairSpinor::zeros(); self.values.len()],
        }
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: Complex64) -> BsVector {
        BsVector {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn plus(&self, other: &BsVector) -> Result<BsVector> {
        check_grids(&self.grid, &other.grid)?;
        Ok(BsVector {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// ⟨self, other⟩ = Σ self† other.
    pub fn dot(&self, other: &BsVector) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.dotc(b))
            .sum()
    }

    /// Exchanges the particles: swaps each grid pair and permutes spinor indices.
    pub fn swapped(&self) -> BsVector {
        BsVector {
            grid: self.grid.iter().map(|(x, y)| (*y, *x)).collect(),
            values: self
                .values
                .iter()
                .map(|v| PairSpinor::from_fn(|i, _| v[4 * (i % 4) + i / 4]))
                .collect(),
        }
    }
}

fn check_grids(a: &[(FourVector, FourVector)], b: &[(FourVector, FourVector)]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::GridIncompatible(format!(
            "grid sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    for (i, ((ax, ay), (bx, by))) in a.iter().zip(b).enumerate() {
        if !(same_momentum(ax, bx) && same_momentum(ay, by)) {
            return Err(Error::GridIncompatible(format!(
                "momentum pair {i} differs"
            )));
        }
    }
    Ok(())
}

/// Sparse block operator on a [`BsVector`]: (VΨ)_out = Σ blocks[out, in]·Ψ_in.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionKernel {
    size: usize,
    blocks: Vec<(usize, usize, PairMatrix)>,
}

impl InteractionKernel {
    pub fn new(size: usize) -> InteractionKernel {
        InteractionKernel {
            size,
            blocks: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn insert(&mut self, out: usize, inp: usize, block: PairMatrix) -> Result<()> {
        if out >= self.size || inp >= self.size {
            return Err(Error::GridIncompatible(format!(
                "block ({out}, {inp}) outside a {} grid",
                self.size
            )));
        }
        self.blocks.push((out, inp, block));
        Ok(())
    }

    /// Assembles V from a momentum-space potential evaluated on every grid pair.
    pub fn from_potential(
        grid: &[(FourVector, FourVector)],
        potential: impl Fn(&(FourVector, FourVector), &(FourVector, FourVector)) -> Option<PairMatrix>,
    ) -> InteractionKernel {
        let mut v = InteractionKernel::new(grid.len());
        for (i, out) in grid.iter().enumerate() {
            for (j, inp) in grid.iter().enumerate() {
                if let Some(b) = potential(out, inp) {
                    v.blocks.push((i, j, b));
                }
            }
        }
        v
    }

    /// Rank-one kernel g · f fᴴ over the grid, with f a unit-norm form factor.
    pub fn separable(form: &BsVector, strength: Complex64) -> InteractionKernel {
        let n = form.norm();
        let mut v = InteractionKernel::new(form.values.len());
        for (i, fi) in form.values.iter().enumerate() {
            for (j, fj) in form.values.iter().enumerate() {
                let b = fi * fj.adjoint() * (strength / (n * n));
                v.blocks.push((i, j, b));
            }
        }
        v
    }

    /// g · I₁₆ on every diagonal block.
    pub fn contact(size: usize, strength: Complex64) -> InteractionKernel {
        let mut v = InteractionKernel::new(size);
        for i in 0..size {
            v.blocks.push((i, i, PairMatrix::identity() * strength));
        }
        v
    }

    pub fn apply(&self, psi: &BsVector) -> Result<BsVector> {
        if psi.values.len() != self.size {
            return Err(Error::GridIncompatible(format!(
                "kernel of size {} applied to {} grid pairs",
                self.size,
                psi.values.len()
            )));
        }
        let mut out = psi.zeros_like();
        for (i, j, b) in &self.blocks {
            out.values[*i] += b * psi.values[*j];
        }
        Ok(out)
    }
}

/// Γ⁰(m) at one momentum pair.
pub fn pair_propagator(m: f64, p_x: &FourVector, p_y: &FourVector) -> Result<PairMatrix> {
    let (mx, _, _) = kinematics(p_x)?;
    let (my, _, _) = kinematics(p_y)?;
    let gap = m - (mx + my);
    if gap.abs() <= 1e-12 * m.abs().max(mx + my) {
        return Err(Error::PoleOnGrid { mass: m });
    }
    let e = |p: &FourVector, mp: f64| {
        (identity() * Complex64::new(mp, 0.0) - slash(p)) * Complex64::new(0.5 / mp, 0.0)
    };
    Ok(kron(&e(p_x, mx), &e(p_y, my)) * Complex64::new(2.0 / gap, 0.0))
}

/// One iteration of the integral term: Γ⁰(m)·V·Ψ.
pub fn bs_born_step(psi: &BsVector, v: &InteractionKernel, m: f64) -> Result<BsVector> {
    let mut out = v.apply(psi)?;
    for ((px, py), value) in psi.grid.iter().zip(out.values.iter_mut()) {
        *value = pair_propagator(m, px, py)? * *value;
    }
    Ok(out)
}

/// Partial sums Ψ₀, Ψ₀ + KΨ₀, … of the Born series, `terms` of them after Ψ₀.
pub fn born_series(
    psi0: &BsVector,
    v: &InteractionKernel,
    m: f64,
    terms: usize,
) -> Result<Vec<BsVector>> {
    let mut sums = vec![psi0.clone()];
    let mut term = psi0.clone();
    for _ in 0..terms {
        term = bs_born_step(&term, v, m)?;
        let next = sums.last().expect("non-empty").plus(&term)?;
        sums.push(next);
    }
    Ok(sums)
}

/// Dominant eigenvalue of Γ⁰(m)·V by power iteration, with the Rayleigh quotient
/// of the last iterate.
pub fn dominant_eigenvalue(
    start: &BsVector,
    v: &InteractionKernel,
    m: f64,
    iterations: usize,
) -> Result<Complex64> {
    let mut x = start.scaled(Complex64::new(1.0 / start.norm(), 0.0));
    let mut lambda = Complex64::new(0.0, 0.0);
    for _ in 0..iterations {
        let y = bs_born_step(&x, v, m)?;
        lambda = x.dot(&y);
        let n = y.norm();
        if n == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        x = y.scaled(Complex64::new(1.0 / n, 0.0));
    }
    Ok(lambda)
}
