//! Free influence functions acting on spectral states, and the first-order
//! Møller operator.
//!
//! For a mode of momentum p the kernels reduce to
//! Γ⁰₊ = i{θ(Δτ)𝓔₊ − θ(−Δτ)𝓔₋} and Γ⁰₋ = i{θ(Δτ)𝓔₋ − θ(−Δτ)𝓔₊}, with
//! 𝓔± = (±m_p − slash p)/(±2m_p) · exp[i(p·Δx ± m_p Δτ)].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{
    dirac_adjoint, identity, max_entry, slash, slash_complex, FourVector, SpinorMatrix,
};
use crate::error::{Error, Result};
use crate::scattering::{on_mass_shell, ExternalPotential};
use crate::spinors::kinematics;
use crate::states::{classify_subspace, Branch, Mode, SpectralState, Subspace};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Γ⁰₊ (forward) or Γ⁰₋ (backward) over a fixed τ-interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceKernel {
    pub which: Branch,
    pub delta_tau: f64,
}

fn mass_projector(p: &FourVector, sign: f64) -> Result<(SpinorMatrix, f64)> {
    let (m, _, _) = kinematics(p)?;
    let e = (identity() * Complex64::new(sign * m, 0.0) - slash(p))
        * Complex64::new(1.0 / (sign * 2.0 * m), 0.0);
    Ok((e, m))
}

impl InfluenceKernel {
    pub fn new(which: Branch, delta_tau: f64) -> Result<InfluenceKernel> {
        if delta_tau == 0.0 {
            return Err(Error::DegenerateInterval);
        }
        Ok(InfluenceKernel { which, delta_tau })
    }

    /// 𝓔 sign selected by (which, sign Δτ) and the overall sign in front of it.
    fn branch_and_sign(&self) -> (f64, f64) {
        let forward_time = self.delta_tau > 0.0;
        match (self.which, forward_time) {
            (Branch::Forward, true) => (1.0, 1.0),
            (Branch::Forward, false) => (-1.0, -1.0),
            (Branch::Backward, true) => (-1.0, 1.0),
            (Branch::Backward, false) => (1.0, -1.0),
        }
    }

    /// Momentum-space kernel at momentum p and separation Δx.
    pub fn matrix(&self, p: &FourVector, dx: &FourVector) -> Result<SpinorMatrix> {
        let (pole, sign) = self.branch_and_sign();
        let (e, m) = mass_projector(p, pole)?;
        let phase = Complex64::from_polar(1.0, p.dot(dx) + pole * m * self.delta_tau);
        Ok(e * (I * sign * phase))
    }

    /// (1/i)·kernel applied to one mode; `None` when the projector annihilates it.
    pub fn apply(&self, mode: &Mode) -> Option<Mode> {
        let k = self
            .matrix(&mode.p, &FourVector::ZERO)
            .expect("mode momentum is validated");
        let w = k * mode.spinor() * -I;
        let (image, _) = Mode::from_spinor(mode.p, mode.branch, &w).expect("validated momentum");
        (image.a.norm() > 1e-12 * mode.a.norm()).then_some(image)
    }
}

/// Evolves a snapshot from τ to τ′ with (1/i)∫d⁴x Γ⁰_which.
///
/// With which = + the forward interval keeps S₊ with phases e^{iωΔτ} and the
/// backward interval keeps S₋ with an extra sign; which = − swaps the subspaces.
pub fn free_evolve(
    state: &SpectralState,
    tau: f64,
    tau_prime: f64,
    which: Branch,
) -> Result<SpectralState> {
    let kernel = InfluenceKernel::new(which, tau_prime - tau)?;
    Ok(SpectralState::from_modes(
        state.box_edge(),
        state.modes().iter().filter_map(|m| kernel.apply(m)),
    ))
}

/// The subspace a kernel keeps and the sign it attaches.
pub fn surviving_subspace(which: Branch, delta_tau: f64) -> Result<(Subspace, f64)> {
    let kernel = InfluenceKernel::new(which, delta_tau)?;
    let (pole, sign) = kernel.branch_and_sign();
    let subspace = if pole > 0.0 {
        Subspace::Plus
    } else {
        Subspace::Minus
    };
    Ok((subspace, sign))
}

/// Two successive evolutions τ0 → τ1 → τ2 without any ordering check.
/// The result is empty when τ1 lies outside the interval.
pub fn compose_unchecked(
    state: &SpectralState,
    tau0: f64,
    tau1: f64,
    tau2: f64,
    which: Branch,
) -> Result<SpectralState> {
    let mid = free_evolve(state, tau0, tau1, which)?;
    free_evolve(&mid, tau1, tau2, which)
}

/// sign(τ2 − τ0) · evolve(τ1→τ2) ∘ evolve(τ0→τ1), which equals the direct
/// evolution τ0 → τ2 for ordered parameters.
pub fn semigroup_compose(
    state: &SpectralState,
    tau0: f64,
    tau1: f64,
    tau2: f64,
    which: Branch,
) -> Result<SpectralState> {
    let ordered = (tau0 < tau1 && tau1 < tau2) || (tau0 > tau1 && tau1 > tau2);
    if !ordered {
        if tau0 == tau1 || tau1 == tau2 || tau0 == tau2 {
            return Err(Error::DegenerateInterval);
        }
        return Err(Error::OrderingViolation {
            start: tau0,
            mid: tau1,
            end: tau2,
        });
    }
    let composed = compose_unchecked(state, tau0, tau1, tau2, which)?;
    Ok(composed.scaled(Complex64::new((tau2 - tau0).signum(), 0.0)))
}

/// Evolution through τ₀ → τ₁ → … → τₙ as successive single steps, rescaled by
/// sign(τₙ − τ₀)^{n−1} so that it equals the direct step τ₀ → τₙ when the
/// parameters are monotone.
pub fn evolve_chain(state: &SpectralState, taus: &[f64], which: Branch) -> Result<SpectralState> {
    if taus.len() < 2 {
        return Err(Error::InvalidArgument(
            "a chain needs at least two parameters".into(),
        ));
    }
    let mut current = state.clone();
    for w in taus.windows(2) {
        current = free_evolve(&current, w[0], w[1], which)?;
    }
    let sign = (taus[taus.len() - 1] - taus[0])
        .signum()
        .powi(taus.len() as i32 - 2);
    Ok(current.scaled(Complex64::new(sign, 0.0)))
}

/// Largest entrywise residual of γ⁰(Γ⁰±(Δx, Δτ))†γ⁰ − Γ⁰∓(−Δx, −Δτ) over the
/// given momenta and both kernel signs.
pub fn influence_conjugation_check(
    dx: &FourVector,
    delta_tau: f64,
    momenta: &[FourVector],
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for which in [Branch::Forward, Branch::Backward] {
        let k = InfluenceKernel::new(which, delta_tau)?;
        let reversed = InfluenceKernel::new(which.flip(), -delta_tau)?;
        for p in momenta {
            let lhs = dirac_adjoint(&k.matrix(p, dx)?);
            let rhs = reversed.matrix(p, &-*dx)?;
            worst = worst.max(max_entry(&(lhs - rhs)));
        }
    }
    Ok(worst)
}

/// Points on the sphere |q| = |p_i|, q⁰ = p_i⁰, on a polar × azimuthal grid
/// around the incident direction. Polar nodes sit at cell centres, so the
/// forward direction is never included.
pub fn elastic_shell(p_i: &FourVector, n_polar: usize, n_azimuth: usize) -> Vec<FourVector> {
    let r = p_i.spatial_norm();
    let axis = if r > 0.0 {
        p_i.spatial().map(|x| x / r)
    } else {
        [0.0, 0.0, 1.0]
    };
    let helper = if axis[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize(cross(axis, helper));
    let e2 = cross(axis, e1);
    let mut out = Vec::with_capacity(n_polar * n_azimuth);
    for j in 0..n_polar {
        let theta = PI * (j as f64 + 0.5) / n_polar as f64;
        for k in 0..n_azimuth {
            let phi = 2.0 * PI * k as f64 / n_azimuth as f64;
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = phi.sin_cos();
            let dir: [f64; 3] =
                std::array::from_fn(|i| ct * axis[i] + st * (cp * e1[i] + sp * e2[i]));
            out.push(FourVector::new(
                p_i.time(),
                r * dir[0],
                r * dir[1],
                r * dir[2],
            ));
        }
    }
    out
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    a.map(|x| x / n)
}

/// ω₊φ_i to first order: the incident mode plus scattered modes on every lattice
/// node that conserves the mass (and the energy, for static potentials).
///
/// Each scattered spinor is (ie/L³)·𝓔₊(q)·slash(Ã(q − p_i))·w_i, with δ(Δm) and
/// δ(Δp⁰) stripped as in [`crate::scattering::s1_amplitude`]. A node equal to the
/// incident momentum is skipped; forward scattering is carried by the incident term.
pub fn moller_first_order(
    incident: &Mode,
    potential: &ExternalPotential,
    out_grid: &[FourVector],
    charge: f64,
    box_edge: f64,
) -> Result<SpectralState> {
    if classify_subspace(incident) != Subspace::Plus {
        return Err(Error::SubspaceViolation);
    }
    let m_i = incident.mass();
    let targets: Vec<&FourVector> = out_grid
        .iter()
        .filter(|q| q.mass().is_ok_and(|m| m > 0.0 && on_mass_shell(m, m_i)))
        .filter(|q| {
            !potential.is_static()
                || on_mass_shell(q.time().abs(), incident.p.time().abs())
                    && q.time().signum() == incident.p.time().signum()
        })
        .filter(|q| q.max_abs_diff(&incident.p) > 1e-12 * incident.p.max_abs())
        .collect();
    if targets.is_empty() {
        return Err(Error::UnresolvedDelta);
    }
    let mut out = SpectralState::single(box_edge, *incident);
    let w_i = incident.spinor();
    let coupling = I * (charge / box_edge.powi(3));
    for q in targets {
        let a = potential.fourier(&(*q - incident.p))?;
        let (e_plus, _) = mass_projector(q, 1.0)?;
        let w = e_plus * slash_complex(&a) * w_i * coupling;
        let branch = if q.energy_sign()? > 0.0 {
            Branch::Forward
        } else {
            Branch::Backward
        };
        let (mode, _) = Mode::from_spinor(*q, branch, &w)?;
        out.push(mode);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{particle_mode, s1_amplitude};
    use nalgebra::Vector2;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn four_modes() -> SpectralState {
        let pos = FourVector::on_shell(0.9, [0.2, -0.3, 0.5], 1.0);
        let neg = FourVector::on_shell(0.9, [-0.4, 0.1, 0.2], -1.0);
        let a = Vector2::new(cx(0.6, 0.1), cx(-0.2, 0.4));
        SpectralState::from_modes(
            2.0,
            [
                Mode::new(pos, Branch::Forward, a).unwrap(),
                Mode::new(pos, Branch::Backward, a).unwrap(),
                Mode::new(neg, Branch::Forward, a).unwrap(),
                Mode::new(neg, Branch::Backward, a).unwrap(),
            ],
        )
    }

    #[test]
    fn particle_mode_advances_phase() {
        let p = FourVector::on_shell(0.9, [0.2, -0.3, 0.5], 1.0);
        let s = SpectralState::single(
            1.0,
            Mode::basis(p, Branch::Forward, 0, cx(1.0, 0.0)).unwrap(),
        );
        let out = free_evolve(&s, 0.0, 0.7, Branch::Forward).unwrap();
        let expected = s.scaled(Complex64::from_polar(1.0, 0.9 * 0.7));
        assert!(out.distance(&expected) < 1e-14);
        assert!(free_evolve(&s, 0.0, -0.7, Branch::Forward)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn mixed_state_filters_to_subspace() {
        let s = four_modes();
        let out = free_evolve(&s, 0.0, 1.0, Branch::Forward).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out
            .modes()
            .iter()
            .all(|m| classify_subspace(m) == Subspace::Plus));
        let back = free_evolve(&s, 0.0, -1.0, Branch::Forward).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back
            .modes()
            .iter()
            .all(|m| classify_subspace(m) == Subspace::Minus));
    }

    #[test]
    fn degenerate_interval() {
        assert_eq!(
            free_evolve(&four_modes(), 1.0, 1.0, Branch::Forward),
            Err(Error::DegenerateInterval)
        );
    }

    #[test]
    fn semigroup_forward_and_reversed() {
        let s = four_modes();
        for (t0, t1, t2) in [(0.0, 1.0, 2.0), (0.0, -1.0, -2.0)] {
            for which in [Branch::Forward, Branch::Backward] {
                let composed = semigroup_compose(&s, t0, t1, t2, which).unwrap();
                let direct = free_evolve(&s, t0, t2, which).unwrap();
                assert!(composed.distance(&direct) < 1e-14);
            }
        }
        assert!(matches!(
            semigroup_compose(&s, 0.0, 3.0, 2.0, Branch::Forward),
            Err(Error::OrderingViolation { .. })
        ));
        assert!(compose_unchecked(&s, 0.0, 3.0, 2.0, Branch::Forward)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn conjugation_identity() {
        let p = [FourVector::on_shell(0.9, [0.2, -0.3, 0.5], 1.0)];
        let dx = FourVector::new(0.3, -1.0, 0.2, 0.8);
        assert!(influence_conjugation_check(&dx, 0.4, &p).unwrap() <= 1e-14);
        assert!(influence_conjugation_check(&dx, -0.4, &p).unwrap() <= 1e-14);
    }

    #[test]
    fn moller_rejects_minus_and_keeps_incident_for_zero_potential() {
        let p = FourVector::on_shell(0.9, [0.0, 0.0, 0.5], 1.0);
        let minus = Mode::basis(p, Branch::Backward, 0, cx(1.0, 0.0)).unwrap();
        let shell = elastic_shell(&p, 4, 4);
        assert_eq!(
            moller_first_order(&minus, &ExternalPotential::Zero, &shell, 1.0, 1.0),
            Err(Error::SubspaceViolation)
        );
        let plus = Mode::basis(p, Branch::Forward, 0, cx(1.0, 0.0)).unwrap();
        let out = moller_first_order(&plus, &ExternalPotential::Zero, &shell, 1.0, 1.0).unwrap();
        let mut pruned = out.clone();
        pruned.prune(0.0);
        assert_eq!(pruned, SpectralState::single(1.0, plus));
    }

    #[test]
    fn moller_weights_match_s1_amplitude() {
        let p = FourVector::on_shell(0.9, [0.0, 0.3, 0.5], 1.0);
        let incident =
            Mode::new(p, Branch::Forward, Vector2::new(cx(0.8, 0.0), cx(0.0, 0.6))).unwrap();
        let shell = elastic_shell(&p, 3, 5);
        let pot = ExternalPotential::coulomb(1.0);
        let out = moller_first_order(&incident, &pot, &shell, 0.3, 2.0).unwrap();
        assert_eq!(out.len(), 1 + shell.len());
        for m in &out.modes()[1..] {
            assert!((m.p.spatial_norm() - p.spatial_norm()).abs() < 1e-12);
            for r in 0..2 {
                let amp = s1_amplitude(&incident, &particle_mode(m.p, r).unwrap(), &pot, 0.3, 2.0)
                    .unwrap();
                assert!((amp.reassembled() - m.a[r]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn moller_without_target() {
        let p = FourVector::on_shell(0.9, [0.0, 0.0, 0.5], 1.0);
        let plus = Mode::basis(p, Branch::Forward, 0, cx(1.0, 0.0)).unwrap();
        let grid = [FourVector::on_shell(1.3, [0.1, 0.0, 0.0], 1.0)];
        assert_eq!(
            moller_first_order(&plus, &ExternalPotential::coulomb(1.0), &grid, 1.0, 1.0),
            Err(Error::UnresolvedDelta)
        );
    }
}
