//! Minkowski geometry under g = diag(−1, +1, +1, +1) and the Dirac matrices in the
//! standard representation.
//!
//! With this metric `slash(p)·slash(p) = −(p·p)·I₄`, so the Clifford relation reads
//! `{γ^μ, γ^ν} = −2 g^{μν} I₄`. The standard Dirac matrices satisfy it as they stand:
//!
//! ```text
//! γ⁰ = diag(1, 1, −1, −1)    γʲ = [[0, σⱼ], [−σⱼ, 0]]    γ⁵ = [[0, I₂], [I₂, 0]] = iγ⁰γ¹γ²γ³
//! ```

use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4, RowVector4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::ALGEBRA_TOL;
use crate::error::{Error, Result};

/// Complex 4×4 matrix acting on Dirac spinors.
pub type SpinorMatrix = Matrix4<Complex64>;

/// Complex 4-component Dirac spinor.
pub type BiSpinor = Vector4<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Diagonal of the metric g_{μν} = g^{μν}.
pub const METRIC: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Contravariant real four-vector (x⁰, x¹, x², x³).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// Rest-frame momentum (m, 0, 0, 0).
    pub const fn at_rest(mass: f64) -> Self {
        FourVector([mass, 0.0, 0.0, 0.0])
    }

    /// On-shell momentum with the given mass, spatial part and energy sign.
    pub fn on_shell(mass: f64, spatial: [f64; 3], sign: f64) -> Self {
        let e = (mass * mass + spatial.iter().map(|c| c * c).sum::<f64>()).sqrt();
        FourVector([sign.signum() * e, spatial[0], spatial[1], spatial[2]])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        self.spatial().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Covariant components x_μ = g_{μν} x^ν.
    pub fn lower(&self) -> [f64; 4] {
        [-self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// E_p = |p⁰|.
    pub fn energy(&self) -> f64 {
        self.0[0].abs()
    }

    pub fn mass(&self) -> Result<f64> {
        mass_of(self)
    }

    pub fn energy_sign(&self) -> Result<f64> {
        energy_sign(self)
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        (0..4)
            .map(|i| (self.0[i] - other.0[i]).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, mu: usize) -> &f64 {
        &self.0[mu]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0.map(|c| c * rhs))
    }
}

/// Complex contravariant four-vector, e.g. a Fourier-space potential Ã^μ(Δp).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexFourVector(pub [Complex64; 4]);

impl ComplexFourVector {
    pub const ZERO: ComplexFourVector = ComplexFourVector([ZERO; 4]);

    pub fn from_real(v: FourVector) -> Self {
        ComplexFourVector(v.0.map(|c| Complex64::new(c, 0.0)))
    }

    pub fn conj(&self) -> Self {
        ComplexFourVector(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexFourVector(self.0.map(|c| c * s))
    }

    /// Bilinear Minkowski contraction with a real vector, k_μ v^μ.
    pub fn contract(&self, k: &FourVector) -> Complex64 {
        let kl = k.lower();
        (0..4).map(|mu| self.0[mu] * kl[mu]).sum()
    }

    /// Bilinear Minkowski contraction of two complex vectors (no conjugation).
    pub fn dot(&self, other: &ComplexFourVector) -> Complex64 {
        (0..4).map(|mu| self.0[mu] * other.0[mu] * METRIC[mu]).sum()
    }

    pub fn real(&self) -> FourVector {
        FourVector(self.0.map(|c| c.re))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }
}

impl Add for ComplexFourVector {
    type Output = ComplexFourVector;
    fn add(self, rhs: ComplexFourVector) -> ComplexFourVector {
        ComplexFourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for ComplexFourVector {
    type Output = ComplexFourVector;
    fn sub(self, rhs: ComplexFourVector) -> ComplexFourVector {
        ComplexFourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

/// −a⁰b⁰ + a·b.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    -a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[3] * b.0[3]
}

/// m_p = √(−p·p). Exactly lightlike input with p⁰ ≠ 0 returns 0; tiny positive
/// p·p within roundoff of the light cone is treated as lightlike.
pub fn mass_of(p: &FourVector) -> Result<f64> {
    if p.0[0] == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let dot = minkowski_dot(p, p);
    let scale = p.0.iter().map(|c| c * c).sum::<f64>();
    if dot > ALGEBRA_TOL * scale.max(1.0) {
        return Err(Error::SuperluminalMomentum { dot });
    }
    Ok((-dot).max(0.0).sqrt())
}

/// φ_p = sign of p⁰.
pub fn energy_sign(p: &FourVector) -> Result<f64> {
    match p.0[0] {
        t if t > 0.0 => Ok(1.0),
        t if t < 0.0 => Ok(-1.0),
        _ => Err(Error::ZeroEnergy),
    }
}

/// Selects one of γ⁰…γ³ or γ⁵.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gamma {
    Zero,
    One,
    Two,
    Three,
    Five,
}

impl Gamma {
    pub const SPACETIME: [Gamma; 4] = [Gamma::Zero, Gamma::One, Gamma::Two, Gamma::Three];

    pub fn from_index(mu: usize) -> Option<Gamma> {
        Gamma::SPACETIME.get(mu).copied()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pauli matrix σⱼ for j = 1, 2, 3.
pub fn pauli(j: usize) -> Matrix2<Complex64> {
    match j {
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index must be 1, 2 or 3, got {j}"),
    }
}

/// **a**·σ for a real 3-vector.
pub fn sigma_dot(a: [f64; 3]) -> Matrix2<Complex64> {
    pauli(1) * c(a[0]) + pauli(2) * c(a[1]) + pauli(3) * c(a[2])
}

/// Assembles [[a, b], [c, d]] from 2×2 blocks.
pub fn from_blocks(
    a: &Matrix2<Complex64>,
    b: &Matrix2<Complex64>,
    c: &Matrix2<Complex64>,
    d: &Matrix2<Complex64>,
) -> SpinorMatrix {
    let mut m = SpinorMatrix::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

pub fn identity() -> SpinorMatrix {
    SpinorMatrix::identity()
}

pub fn gamma(which: Gamma) -> SpinorMatrix {
    let id = Matrix2::<Complex64>::identity();
    let zero = Matrix2::<Complex64>::zeros();
    match which {
        Gamma::Zero => from_blocks(&id, &zero, &zero, &(-id)),
        Gamma::One => from_blocks(&zero, &pauli(1), &(-pauli(1)), &zero),
        Gamma::Two => from_blocks(&zero, &pauli(2), &(-pauli(2)), &zero),
        Gamma::Three => from_blocks(&zero, &pauli(3), &(-pauli(3)), &zero),
        Gamma::Five => from_blocks(&zero, &id, &id, &zero),
    }
}

/// γ^μ for μ = 0..3.
pub fn gamma_mu(mu: usize) -> SpinorMatrix {
    gamma(Gamma::from_index(mu).expect("spacetime index must be 0..=3"))
}

/// The four spacetime gammas, computed once per call site.
pub fn gammas() -> [SpinorMatrix; 4] {
    std::array::from_fn(gamma_mu)
}

/// γ^μ p_μ.
pub fn slash(p: &FourVector) -> SpinorMatrix {
    let pl = p.lower();
    let g = gammas();
    g[0] * c(pl[0]) + g[1] * c(pl[1]) + g[2] * c(pl[2]) + g[3] * c(pl[3])
}

/// γ^μ a_μ for a complex four-vector.
pub fn slash_complex(a: &ComplexFourVector) -> SpinorMatrix {
    let g = gammas();
    (0..4).fold(SpinorMatrix::zeros(), |acc, mu| {
        acc + g[mu] * (a.0[mu] * METRIC[mu])
    })
}

/// γ⁰ M† γ⁰.
pub fn dirac_adjoint(m: &SpinorMatrix) -> SpinorMatrix {
    let g0 = gamma(Gamma::Zero);
    g0 * m.adjoint() * g0
}

/// ψ̄ = ψ†γ⁰.
pub fn bar(psi: &BiSpinor) -> RowVector4<Complex64> {
    psi.adjoint() * gamma(Gamma::Zero)
}

/// {A, B} = AB + BA.
pub fn anticommutator(a: &SpinorMatrix, b: &SpinorMatrix) -> SpinorMatrix {
    a * b + b * a
}

/// [A, B] = AB − BA.
pub fn commutator(a: &SpinorMatrix, b: &SpinorMatrix) -> SpinorMatrix {
    a * b - b * a
}

/// Largest entrywise modulus of a complex matrix.
pub fn max_entry<R: nalgebra::Dim, C: nalgebra::Dim, S>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> f64
where
    S: nalgebra::RawStorage<Complex64, R, C>,
{
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise modulus of {γ^μ, γ^ν} + 2g^{μν}I₄ over all sixteen pairs,
/// together with the per-pair residuals in row-major (μ, ν) order.
pub fn clifford_residuals() -> Vec<((usize, usize), f64)> {
    let g = gammas();
    let mut out = Vec::with_capacity(16);
    for mu in 0..4 {
        for nu in 0..4 {
            let mut r = anticommutator(&g[mu], &g[nu]);
            if mu == nu {
                r += identity() * c(2.0 * METRIC[mu]);
            }
            out.push(((mu, nu), max_entry(&r)));
        }
    }
    out
}
