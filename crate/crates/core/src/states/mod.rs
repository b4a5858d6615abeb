//! Plane-wave modes and finite spectral superpositions of them.
//!
//! A [`SpectralState`] is a box-normalized snapshot: its amplitudes describe
//! ψ(x) = Σ U(p) a e^{ip·x} / L², where U is u(p) for the forward branch and v(p)
//! for the backward branch. [`SpectralState::value`] evaluates the free solution
//! whose snapshot at τ = 0 is the state.

mod current;
mod symmetry;

pub use current::{
    axial_current, concatenated_current, pseudoscalar_density, transition_current, CurrentField,
    CurrentSpectrum, ScalarSpectrum, UniformGrid,
};
pub use symmetry::{charge_conjugate, parity, time_reverse, tpc, SymmetryPhase};

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{max_entry, BiSpinor, FourVector};
use crate::constants::DEFAULT_BOX_EDGE;
use crate::error::{Error, Result};
use crate::spinors::{block_bar, kinematics, u_block, v_block, SpinorBlock};

/// Sense of τ-propagation: the superscript of f^{(±)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Forward,
    Backward,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Forward => 1.0,
            Branch::Backward => -1.0,
        }
    }

    pub fn flip(self) -> Branch {
        match self {
            Branch::Forward => Branch::Backward,
            Branch::Backward => Branch::Forward,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Branch> {
        match sign {
            1 => Ok(Branch::Forward),
            -1 => Ok(Branch::Backward),
            other => Err(Error::Format(format!("branch must be ±1, got {other}"))),
        }
    }
}

/// The partition of subluminal states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subspace {
    /// Particles f^{(+)} and antiparticles h^{(−)} of positive energy; ∝ e^{+i m τ}.
    Plus,
    /// Their negative-energy counterparts; ∝ e^{−i m τ}.
    Minus,
}

/// Symbolic delta-function scales that are carried but never evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolicScale {
    /// T_τ = 2πδ(0) in mass: the inverse mass spread of a beam.
    Tau,
    /// T₀ = 2πδ(0) in energy: the observation interval in x⁰.
    Time,
}

pub(crate) fn same_momentum(a: &FourVector, b: &FourVector) -> bool {
    a.max_abs_diff(b) <= 1e-12 * a.max_abs().max(b.max_abs()).max(1.0)
}

pub(crate) fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// One free plane-wave term f^{(branch)}_p with 2×1 spin coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub p: FourVector,
    pub branch: Branch,
    pub a: Vector2<Complex64>,
}

impl Mode {
    pub fn new(p: FourVector, branch: Branch, a: Vector2<Complex64>) -> Result<Mode> {
        kinematics(&p)?;
        Ok(Mode { p, branch, a })
    }

    /// Mode with a = e_r (r = 0 or 1), scaled by `coefficient`.
    pub fn basis(p: FourVector, branch: Branch, r: usize, coefficient: Complex64) -> Result<Mode> {
        let mut a = Vector2::zeros();
        a[r] = coefficient;
        Mode::new(p, branch, a)
    }

    pub fn mass(&self) -> f64 {
        self.p
            .mass()
            .expect("mode momentum validated at construction")
    }

    pub fn energy_sign(&self) -> f64 {
        self.p
            .energy_sign()
            .expect("mode momentum validated at construction")
    }

    /// τ-frequency ω = branch · φ_p · m_p of the phase e^{i(p·x + ωτ)}.
    pub fn frequency(&self) -> f64 {
        self.branch.sign() * self.energy_sign() * self.mass()
    }

    /// u(p) for the forward branch, v(p) for the backward branch.
    pub fn block(&self) -> SpinorBlock {
        spinor_block(&self.p, self.branch).expect("mode momentum validated at construction")
    }

    /// U(p)·a.
    pub fn spinor(&self) -> BiSpinor {
        self.block() * self.a
    }

    pub fn with_coefficients(&self, a: Vector2<Complex64>) -> Mode {
        Mode { a, ..*self }
    }

    pub fn scaled(&self, s: Complex64) -> Mode {
        self.with_coefficients(self.a * s)
    }

    /// Same momentum and branch.
    pub fn same_key(&self, other: &Mode) -> bool {
        self.branch == other.branch && same_momentum(&self.p, &other.p)
    }

    /// Re-expresses a spinor in the (p, branch) basis. Returns the mode and the
    /// residual ‖U a − w‖ measuring how far w lies outside that span.
    pub fn from_spinor(p: FourVector, branch: Branch, w: &BiSpinor) -> Result<(Mode, f64)> {
        let block = spinor_block(&p, branch)?;
        let gram = block_bar(&block) * block;
        let inv = gram
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("singular spinor Gram matrix".into()))?;
        let a = inv * (block_bar(&block) * w);
        let residual = max_entry(&(block * a - w));
        Ok((Mode { p, branch, a }, residual))
    }
}

pub(crate) fn spinor_block(p: &FourVector, branch: Branch) -> Result<SpinorBlock> {
    match branch {
        Branch::Forward => u_block(p),
        Branch::Backward => v_block(p),
    }
}

/// Gram matrix Ū(p, b₁) U(p, b₂) of two blocks at the same momentum: ±I₂ or 0.
pub(crate) fn block_gram(p: &FourVector, left: Branch, right: Branch) -> Matrix2<Complex64> {
    let l = spinor_block(p, left).expect("validated momentum");
    let r = spinor_block(p, right).expect("validated momentum");
    block_bar(&l) * r
}

/// Value of one mode at (x, τ): U(p)a / L² · exp[i(p·x + branch·φ_p m_p τ)].
pub fn plane_wave_value(mode: &Mode, x: &FourVector, tau: f64, box_edge: f64) -> BiSpinor {
    let phase = mode.p.dot(x) + mode.frequency() * tau;
    mode.spinor() * (Complex64::from_polar(1.0, phase) / (box_edge * box_edge))
}

/// dt/dτ at constant phase and position: ±m_p/E_p, signed by the branch only.
pub fn coordinate_velocity(mode: &Mode) -> f64 {
    mode.branch.sign() * mode.mass() / mode.p.energy()
}

/// S₊ when branch·φ_p = +1, S₋ otherwise.
pub fn classify_subspace(mode: &Mode) -> Subspace {
    if mode.branch.sign() * mode.energy_sign() > 0.0 {
        Subspace::Plus
    } else {
        Subspace::Minus
    }
}

/// Finite superposition of modes in a 4-cube box of edge L.
///
/// Terms with the same momentum and branch are merged on insertion, so the
/// stored terms are unique per (p, branch) and spin index.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    box_edge: f64,
    modes: Vec<Mode>,
}

impl SpectralState {
    pub fn new(box_edge: f64) -> SpectralState {
        assert!(
            box_edge > 0.0 && box_edge.is_finite(),
            "box edge must be positive"
        );
        SpectralState {
            box_edge,
            modes: Vec::new(),
        }
    }

    pub fn from_modes(box_edge: f64, modes: impl IntoIterator<Item = Mode>) -> SpectralState {
        let mut s = SpectralState::new(box_edge);
        for m in modes {
            s.push(m);
        }
        s
    }

    pub fn single(box_edge: f64, mode: Mode) -> SpectralState {
        SpectralState::from_modes(box_edge, [mode])
    }

    pub fn box_edge(&self) -> f64 {
        self.box_edge
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn push(&mut self, mode: Mode) {
        assert!(
            mode.a.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "mode coefficients must be finite"
        );
        match self.modes.iter_mut().find(|m| m.same_key(&mode)) {
            Some(existing) => existing.a += mode.a,
            None => self.modes.push(mode),
        }
    }

    /// Drops terms whose coefficients are all below `tol` in modulus.
    pub fn prune(&mut self, tol: f64) {
        self.modes.retain(|m| m.a.iter().any(|z| z.norm() > tol));
    }

    pub fn scaled(&self, s: Complex64) -> SpectralState {
        SpectralState {
            box_edge: self.box_edge,
            modes: self.modes.iter().map(|m| m.scaled(s)).collect(),
        }
    }

    pub fn plus(&self, other: &SpectralState) -> Result<SpectralState> {
        check_box(self.box_edge, other.box_edge)?;
        let mut out = self.clone();
        for m in &other.modes {
            out.push(*m);
        }
        Ok(out)
    }

    /// ψ(x, τ) = Σ plane_wave_value.
    pub fn value(&self, x: &FourVector, tau: f64) -> BiSpinor {
        self.modes.iter().fold(BiSpinor::zeros(), |acc, m| {
            acc + plane_wave_value(m, x, tau, self.box_edge)
        })
    }

    /// Largest coefficient difference over the union of both states' terms.
    pub fn distance(&self, other: &SpectralState) -> f64 {
        let mut worst = 0.0_f64;
        for m in &self.modes {
            let d = match other.modes.iter().find(|o| o.same_key(m)) {
                Some(o) => max_entry(&(m.a - o.a)),
                None => max_entry(&m.a),
            };
            worst = worst.max(d);
        }
        for o in &other.modes {
            if !self.modes.iter().any(|m| m.same_key(o)) {
                worst = worst.max(max_entry(&o.a));
            }
        }
        worst
    }

    /// Terms in the given subspace.
    pub fn restricted_to(&self, subspace: Subspace) -> SpectralState {
        SpectralState {
            box_edge: self.box_edge,
            modes: self
                .modes
                .iter()
                .filter(|m| classify_subspace(m) == subspace)
                .copied()
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.records()).expect("state records serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("state records serialize")
    }

    pub fn from_json(text: &str) -> Result<SpectralState> {
        let records: Vec<ModeRecord> =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        SpectralState::from_records(&records)
    }

    pub fn records(&self) -> Vec<ModeRecord> {
        self.modes
            .iter()
            .map(|m| ModeRecord::from_mode(m, self.box_edge))
            .collect()
    }

    pub fn from_records(records: &[ModeRecord]) -> Result<SpectralState> {
        let box_edge = records.first().map_or(DEFAULT_BOX_EDGE, |r| r.box_edge);
        if !(box_edge > 0.0 && box_edge.is_finite()) {
            return Err(Error::Format(format!(
                "box edge must be positive, got {box_edge}"
            )));
        }
        let mut s = SpectralState::new(box_edge);
        for r in records {
            check_box(box_edge, r.box_edge)?;
            s.push(r.to_mode()?);
        }
        Ok(s)
    }
}

pub(crate) fn check_box(left: f64, right: f64) -> Result<()> {
    if (left - right).abs() > 1e-12 * left.abs().max(right.abs()) {
        return Err(Error::BoxMismatch { left, right });
    }
    Ok(())
}

/// Box-normalized ∫d⁴x ψ̄φ: Σ over equal momenta of a† Ū U b.
///
/// Same-branch pairs contribute ±a†b, mixed-branch pairs vanish.
pub fn inner_product(a: &SpectralState, b: &SpectralState) -> Result<Complex64> {
    check_box(a.box_edge, b.box_edge)?;
    let mut total = Complex64::new(0.0, 0.0);
    for ma in &a.modes {
        for mb in &b.modes {
            if same_momentum(&ma.p, &mb.p) {
                let g = block_gram(&ma.p, ma.branch, mb.branch);
                total += (ma.a.adjoint() * g * mb.a)[(0, 0)];
            }
        }
    }
    Ok(total)
}

/// One entry of the state document:
/// `{"p": [4 reals], "branch": ±1, "a": [[re, im], [re, im]], "L": real}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub p: [f64; 4],
    pub branch: i32,
    pub a: [[f64; 2]; 2],
    #[serde(rename = "L")]
    pub box_edge: f64,
}

impl ModeRecord {
    pub fn from_mode(mode: &Mode, box_edge: f64) -> ModeRecord {
        ModeRecord {
            p: mode.p.0,
            branch: mode.branch.sign() as i32,
            a: [[mode.a[0].re, mode.a[0].im], [mode.a[1].re, mode.a[1].im]],
            box_edge,
        }
    }

    pub fn to_mode(&self) -> Result<Mode> {
        let a = Vector2::new(
            Complex64::new(self.a[0][0], self.a[0][1]),
            Complex64::new(self.a[1][0], self.a[1][1]),
        );
        if a.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Format("non-finite coefficient".into()));
        }
        Mode::new(FourVector(self.p), Branch::from_sign(self.branch)?, a)
    }
}
