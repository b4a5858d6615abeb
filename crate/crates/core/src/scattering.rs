//! First-order scattering by an external four-potential.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector2;
use num_complex::Complex64;

use crate::algebra::{
    bar, dirac_adjoint, slash_complex, ComplexFourVector, FourVector, SpinorMatrix,
};
use crate::constants::{unit_charge, ALPHA, ELECTRON_MASS};
use crate::error::{Error, Result};
use crate::spinors::{lambda_u, u_block};
use crate::states::{classify_subspace, Branch, Mode, Subspace, SymbolicScale};

type FourierFn = dyn Fn(&FourVector) -> Result<ComplexFourVector> + Send + Sync;

/// Momentum-space external potential Ã^μ(Δp).
#[derive(Clone)]
pub enum ExternalPotential {
    Zero,
    /// Static point charge Z with coupling `charge`, optionally screened by mass μ.
    Coulomb {
        z: f64,
        charge: f64,
        screening: f64,
    },
    /// Arbitrary transform. `is_static` marks an implicit 2πδ(Δp⁰).
    Custom {
        fourier: Arc<FourierFn>,
        is_static: bool,
    },
}

impl fmt::Debug for ExternalPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExternalPotential::Zero => write!(f, "Zero"),
            ExternalPotential::Coulomb {
                z,
                charge,
                screening,
            } => f
                .debug_struct("Coulomb")
                .field("z", z)
                .field("charge", charge)
                .field("screening", screening)
                .finish(),
            ExternalPotential::Custom { is_static, .. } => f
                .debug_struct("Custom")
                .field("is_static", is_static)
                .finish_non_exhaustive(),
        }
    }
}

impl ExternalPotential {
    pub fn coulomb(z: f64) -> ExternalPotential {
        ExternalPotential::Coulomb {
            z,
            charge: unit_charge(),
            screening: 0.0,
        }
    }

    pub fn custom(
        is_static: bool,
        fourier: impl Fn(&FourVector) -> Result<ComplexFourVector> + Send + Sync + 'static,
    ) -> ExternalPotential {
        ExternalPotential::Custom {
            fourier: Arc::new(fourier),
            is_static,
        }
    }

    pub fn is_static(&self) -> bool {
        match self {
            ExternalPotential::Zero | ExternalPotential::Coulomb { .. } => true,
            ExternalPotential::Custom { is_static, .. } => *is_static,
        }
    }

    pub fn fourier(&self, dp: &FourVector) -> Result<ComplexFourVector> {
        match self {
            ExternalPotential::Zero => Ok(ComplexFourVector::ZERO),
            ExternalPotential::Coulomb {
                z,
                charge,
                screening,
            } => coulomb_ft(dp, *z, *charge, *screening),
            ExternalPotential::Custom { fourier, .. } => fourier(dp),
        }
    }
}

/// Ã⁰ = −Ze/(|Δp|² + μ²), Ã^j = 0. The static factor 2πδ(Δp⁰) is implicit.
pub fn coulomb_ft(
    dp: &FourVector,
    z: f64,
    charge: f64,
    screening: f64,
) -> Result<ComplexFourVector> {
    if screening < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "screening mass must be ≥ 0, got {screening}"
        )));
    }
    let q2 = dp.spatial().iter().map(|x| x * x).sum::<f64>();
    let denom = q2 + screening * screening;
    if denom == 0.0 {
        return Err(Error::ForwardSingular);
    }
    let mut a = ComplexFourVector::ZERO;
    a.0[0] = Complex64::new(-z * charge / denom, 0.0);
    Ok(a)
}

/// Which delta function a factor stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// δ(Δm): τ-frequency conservation.
    Mass,
    /// δ(Δp⁰): energy conservation by a static potential.
    Energy,
}

/// A delta function stripped from an amplitude, with the scale its square produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaFactor {
    pub kind: DeltaKind,
    pub scale: SymbolicScale,
}

/// Why an amplitude is identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    MassShell,
    EnergyShell,
}

/// S⁽¹⁾ with its delta functions and box prefactor factored out:
/// S = prefactor × value × Π stripped.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedAmplitude {
    pub value: Complex64,
    pub prefactor: Complex64,
    pub stripped: Vec<DeltaFactor>,
    pub vanishing: Option<Vanishing>,
}

impl ReducedAmplitude {
    /// prefactor × value.
    pub fn reassembled(&self) -> Complex64 {
        self.prefactor * self.value
    }
}

pub(crate) fn scattering_factors(is_static: bool) -> Vec<DeltaFactor> {
    let mut f = vec![DeltaFactor {
        kind: DeltaKind::Mass,
        scale: SymbolicScale::Tau,
    }];
    if is_static {
        f.push(DeltaFactor {
            kind: DeltaKind::Energy,
            scale: SymbolicScale::Time,
        });
    }
    f
}

fn require_particle(mode: &Mode) -> Result<()> {
    if mode.branch != Branch::Forward || classify_subspace(mode) != Subspace::Plus {
        return Err(Error::SubspaceViolation);
    }
    Ok(())
}

pub(crate) fn on_mass_shell(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.max(b)
}

/// First-order amplitude ū_f slash(Ã(p_f − p_i)) u_i between positive-energy
/// particle modes, with prefactor ie/L³.
pub fn s1_amplitude(
    initial: &Mode,
    fin: &Mode,
    pot: &ExternalPotential,
    charge: f64,
    box_edge: f64,
) -> Result<ReducedAmplitude> {
    require_particle(initial)?;
    require_particle(fin)?;
    let mut amp = ReducedAmplitude {
        value: Complex64::new(0.0, 0.0),
        prefactor: Complex64::new(0.0, charge / box_edge.powi(3)),
        stripped: scattering_factors(pot.is_static()),
        vanishing: None,
    };
    if !on_mass_shell(initial.mass(), fin.mass()) {
        amp.vanishing = Some(Vanishing::MassShell);
        return Ok(amp);
    }
    if pot.is_static() && !on_mass_shell(initial.p.energy(), fin.p.energy()) {
        amp.vanishing = Some(Vanishing::EnergyShell);
        return Ok(amp);
    }
    let a = pot.fourier(&(fin.p - initial.p))?;
    amp.value = (bar(&fin.spinor()) * slash_complex(&a) * initial.spinor())[(0, 0)];
    Ok(amp)
}

/// ½ Σ_spins |ū_f slash(Ã) u_i|², computed two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSum {
    /// Explicit enumeration over the four spin pairs.
    pub enumeration: f64,
    /// ½ Tr[Λ_u(p_f) M Λ_u(p_i) M̄] with M = slash(Ã).
    pub trace: f64,
}

pub fn spin_averaged_amp2(
    p_i: &FourVector,
    p_f: &FourVector,
    pot: &ExternalPotential,
) -> Result<SpinSum> {
    for p in [p_i, p_f] {
        if p.energy_sign()? < 0.0 {
            return Err(Error::SubspaceViolation);
        }
    }
    let m: SpinorMatrix = slash_complex(&pot.fourier(&(*p_f - *p_i))?);
    let ui = u_block(p_i)?;
    let uf = u_block(p_f)?;
    let amps = crate::spinors::block_bar(&uf) * m * ui;
    let enumeration = 0.5 * amps.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let trace = 0.5
        * (lambda_u(p_f)? * m * lambda_u(p_i)? * dirac_adjoint(&m))
            .trace()
            .re;
    Ok(SpinSum { enumeration, trace })
}

/// Incident and outgoing electron momenta for scattering angle κ about the z axis.
pub fn elastic_kinematics(p_mag: f64, kappa: f64) -> (FourVector, FourVector) {
    let e = p_mag.hypot(ELECTRON_MASS);
    (
        FourVector::new(e, 0.0, 0.0, p_mag),
        FourVector::new(e, p_mag * kappa.sin(), 0.0, p_mag * kappa.cos()),
    )
}

fn check_angle(p_mag: f64, kappa: f64) -> Result<()> {
    if !(p_mag > 0.0 && p_mag.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "momentum must be positive, got {p_mag}"
        )));
    }
    if kappa == 0.0 {
        return Err(Error::ForwardSingular);
    }
    if !(kappa > 0.0 && kappa <= PI) {
        return Err(Error::InvalidArgument(format!(
            "angle must lie in (0, π], got {kappa}"
        )));
    }
    Ok(())
}

/// Electron–nucleus differential cross-section per solid angle (MeV⁻²).
///
/// dσ/dΩ = (e² m²/4π²) · ½Σ|ū_f slash(Ã) u_i|², after cancelling T_τ and T₀.
pub fn mott_dcs(p_mag: f64, kappa: f64, z: f64) -> Result<f64> {
    check_angle(p_mag, kappa)?;
    let (p_i, p_f) = elastic_kinematics(p_mag, kappa);
    let sum = spin_averaged_amp2(&p_i, &p_f, &ExternalPotential::coulomb(z))?;
    let e2 = 4.0 * PI * ALPHA;
    Ok(e2 * ELECTRON_MASS * ELECTRON_MASS / (4.0 * PI * PI) * sum.enumeration)
}

/// Z²α²E² / (4|p|⁴ sin⁴(κ/2)), the spin-independent baseline.
pub fn rutherford_dcs(p_mag: f64, kappa: f64, z: f64) -> Result<f64> {
    check_angle(p_mag, kappa)?;
    let e2 = p_mag * p_mag + ELECTRON_MASS * ELECTRON_MASS;
    let s2 = (kappa / 2.0).sin().powi(2);
    Ok(z * z * ALPHA * ALPHA * e2 / (4.0 * p_mag.powi(4) * s2 * s2))
}

/// mott_dcs / rutherford_dcs.
pub fn mott_ratio(p_mag: f64, kappa: f64) -> Result<f64> {
    Ok(mott_dcs(p_mag, kappa, 1.0)? / rutherford_dcs(p_mag, kappa, 1.0)?)
}

/// The factor 1 − |p/m|² sin²(κ/2), with |p/m|² in place of β².
pub fn momentum_ratio_mott_factor(p_mag: f64, kappa: f64) -> f64 {
    1.0 - (p_mag / ELECTRON_MASS).powi(2) * (kappa / 2.0).sin().powi(2)
}

/// Particle mode with a = e_r.
pub fn particle_mode(p: FourVector, spin: usize) -> Result<Mode> {
    let mut a = Vector2::zeros();
    a[spin] = Complex64::new(1.0, 0.0);
    Mode::new(p, Branch::Forward, a)
}
