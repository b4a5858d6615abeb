use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{max_entry, FourVector};
use crate::constants::DEFAULT_BOX_EDGE;
use crate::error::{Error, Result};
use crate::spinors::SpinorBlock;
use crate::states::{block_gram, check_box, same_momentum, spinor_block, Branch, Mode};

/// Exchange symmetry declared for a two-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exchange {
    None,
    Fermionic,
    Bosonic,
}

/// Momentum and branch of one tensor factor; the spin coefficients live in the term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeKey {
    pub p: FourVector,
    pub branch: Branch,
}

impl ModeKey {
    pub fn of(mode: &Mode) -> ModeKey {
        ModeKey {
            p: mode.p,
            branch: mode.branch,
        }
    }

    pub fn block(&self) -> SpinorBlock {
        spinor_block(&self.p, self.branch).expect("key momentum is validated")
    }

    pub fn frequency(&self) -> f64 {
        Mode {
            p: self.p,
            branch: self.branch,
            a: nalgebra::Vector2::zeros(),
        }
        .frequency()
    }

    pub fn same(&self, other: &ModeKey) -> bool {
        self.branch == other.branch && same_momentum(&self.p, &other.p)
    }
}

/// Σ_{rs} C_rs · U_x e_r ⊗ U_y e_s for one pair of keys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTerm {
    pub x: ModeKey,
    pub y: ModeKey,
    pub c: Matrix2<Complex64>,
}

/// Finite sum of tensor products of modes for particles at events x and y.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState {
    box_edge: f64,
    exchange: Exchange,
    terms: Vec<PairTerm>,
}

/// Gram matrix of two keys: Ū_a U_b when the momenta agree, zero otherwise.
pub(crate) fn key_gram(a: &ModeKey, b: &ModeKey) -> Matrix2<Complex64> {
    if same_momentum(&a.p, &b.p) {
        block_gram(&a.p, a.branch, b.branch)
    } else {
        Matrix2::zeros()
    }
}

/// Σ_{s s'} (A)_{s s'} (B)_{s s'}.
pub(crate) fn contract(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Complex64 {
    a.component_mul(b).sum()
}

impl TwoParticleState {
    pub fn new(box_edge: f64, exchange: Exchange) -> TwoParticleState {
        assert!(
            box_edge > 0.0 && box_edge.is_finite(),
            "box edge must be positive"
        );
        TwoParticleState {
            box_edge,
            exchange,
            terms: Vec::new(),
        }
    }

    /// coefficient · ψ ⊗ χ.
    pub fn product(box_edge: f64, coefficient: Complex64, x: &Mode, y: &Mode) -> TwoParticleState {
        let mut s = TwoParticleState::new(box_edge, Exchange::None);
        s.push(PairTerm {
            x: ModeKey::of(x),
            y: ModeKey::of(y),
            c: x.a * y.a.transpose() * coefficient,
        });
        s
    }

    pub fn box_edge(&self) -> f64 {
        self.box_edge
    }

    pub fn exchange(&self) -> Exchange {
        self.exchange
    }

    pub fn with_exchange(mut self, exchange: Exchange) -> TwoParticleState {
        self.exchange = exchange;
        self
    }

    pub fn terms(&self) -> &[PairTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: PairTerm) {
        match self
            .terms
            .iter_mut()
            .find(|t| t.x.same(&term.x) && t.y.same(&term.y))
        {
            Some(existing) => existing.c += term.c,
            None => self.terms.push(term),
        }
    }

    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|t| max_entry(&t.c) > tol);
    }

    pub fn max_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| max_entry(&t.c))
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: Complex64) -> TwoParticleState {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.c *= s;
        }
        out
    }

    pub fn plus(&self, other: &TwoParticleState) -> Result<TwoParticleState> {
        check_box(self.box_edge, other.box_edge)?;
        let mut out = self.clone();
        for t in &other.terms {
            out.push(*t);
        }
        Ok(out)
    }

    /// Exchanges the tensor factors: C → Cᵀ with the keys swapped.
    pub fn swapped(&self) -> TwoParticleState {
        let mut out = TwoParticleState::new(self.box_edge, self.exchange);
        for t in &self.terms {
            out.push(PairTerm {
                x: t.y,
                y: t.x,
                c: t.c.transpose(),
            });
        }
        out
    }

    /// Largest coefficient difference over the union of both states' terms.
    pub fn distance(&self, other: &TwoParticleState) -> f64 {
        let mut diff = self.clone();
        for t in &other.terms {
            diff.push(PairTerm { c: -t.c, ..*t });
        }
        diff.max_coefficient()
    }

    /// Distinct keys of one factor in first-seen order.
    fn keys(&self, first: bool) -> Vec<ModeKey> {
        let mut keys: Vec<ModeKey> = Vec::new();
        for t in &self.terms {
            let k = if first { t.x } else { t.y };
            if !keys.iter().any(|q| q.same(&k)) {
                keys.push(k);
            }
        }
        keys
    }

    /// Coefficients as one matrix over (x key, spin) × (y key, spin).
    pub fn coefficient_matrix(&self) -> DMatrix<Complex64> {
        let xs = self.keys(true);
        let ys = self.keys(false);
        let mut m = DMatrix::zeros(2 * xs.len(), 2 * ys.len());
        for t in &self.terms {
            let i = xs.iter().position(|k| k.same(&t.x)).expect("key collected");
            let j = ys.iter().position(|k| k.same(&t.y)).expect("key collected");
            m.view_mut((2 * i, 2 * j), (2, 2)).copy_from(&t.c);
        }
        m
    }

    /// Ratio of the second to the first singular value of the coefficient
    /// matrix; zero for a simple product.
    pub fn entanglement_ratio(&self) -> f64 {
        let m = self.coefficient_matrix();
        if m.is_empty() {
            return 0.0;
        }
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        if sv[0] == 0.0 {
            return 0.0;
        }
        sv.get(1).copied().unwrap_or(0.0) / sv[0]
    }

    pub fn is_simple_product(&self, tol: f64) -> bool {
        self.entanglement_ratio() <= tol
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.records()).expect("pair records serialize")
    }

    pub fn from_json(text: &str) -> Result<TwoParticleState> {
        let records: Vec<PairRecord> =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let (box_edge, exchange) = records
            .first()
            .map_or((DEFAULT_BOX_EDGE, Exchange::None), |r| {
                (r.box_edge, r.exchange)
            });
        let mut s = TwoParticleState::new(box_edge, exchange);
        for r in &records {
            check_box(box_edge, r.box_edge)?;
            if r.exchange != exchange {
                return Err(Error::Format("mixed exchange symmetry".into()));
            }
            s.push(r.to_term()?);
        }
        Ok(s)
    }

    pub fn records(&self) -> Vec<PairRecord> {
        self.terms
            .iter()
            .map(|t| PairRecord {
                c: std::array::from_fn(|r| {
                    std::array::from_fn(|s| [t.c[(r, s)].re, t.c[(r, s)].im])
                }),
                x: KeyRecord {
                    p: t.x.p.0,
                    branch: t.x.branch.sign() as i32,
                },
                y: KeyRecord {
                    p: t.y.p.0,
                    branch: t.y.branch.sign() as i32,
                },
                box_edge: self.box_edge,
                exchange: self.exchange,
            })
            .collect()
    }
}

/// Box-normalized ∫d⁴x d⁴y Φ̄₁Φ₂ = Σ Σ_{ss'} (C₁† G_x C₂)_{ss'} (G_y)_{ss'}.
pub fn two_inner_product(a: &TwoParticleState, b: &TwoParticleState) -> Result<Complex64> {
    check_box(a.box_edge, b.box_edge)?;
    let mut total = Complex64::new(0.0, 0.0);
    for ta in &a.terms {
        for tb in &b.terms {
            let gx = key_gram(&ta.x, &tb.x);
            let gy = key_gram(&ta.y, &tb.y);
            total += contract(&(ta.c.adjoint() * gx * tb.c), &gy);
        }
    }
    Ok(total)
}

fn exchange_combination(
    a: &Mode,
    b: &Mode,
    box_edge: f64,
    sign: f64,
    exchange: Exchange,
) -> Result<TwoParticleState> {
    let norm = std::f64::consts::FRAC_1_SQRT_2;
    let ab = TwoParticleState::product(box_edge, Complex64::new(norm, 0.0), a, b);
    let ba = TwoParticleState::product(box_edge, Complex64::new(sign * norm, 0.0), b, a);
    let mut s = ab.plus(&ba)?.with_exchange(exchange);
    let scale = max_entry(&a.a).max(max_entry(&b.a)).powi(2);
    s.prune(1e-14 * scale);
    if s.is_empty() {
        return Err(Error::NullState);
    }
    Ok(s)
}

/// (ψ⊗χ − χ⊗ψ)/√2. Identical modes give [`Error::NullState`].
pub fn antisymmetrize(psi: &Mode, chi: &Mode, box_edge: f64) -> Result<TwoParticleState> {
    exchange_combination(psi, chi, box_edge, -1.0, Exchange::Fermionic)
}

/// (φ⊗ξ + ξ⊗φ)/√2.
pub fn symmetrize(phi: &Mode, xi: &Mode, box_edge: f64) -> Result<TwoParticleState> {
    exchange_combination(phi, xi, box_edge, 1.0, Exchange::Bosonic)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyRecord {
    pub p: [f64; 4],
    pub branch: i32,
}

/// One entry of the two-particle document:
/// `{"c": 2×2 of [re, im], "x": {"p", "branch"}, "y": {...}, "L", "exchange"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub c: [[[f64; 2]; 2]; 2],
    pub x: KeyRecord,
    pub y: KeyRecord,
    #[serde(rename = "L")]
    pub box_edge: f64,
    pub exchange: Exchange,
}

impl PairRecord {
    fn to_term(&self) -> Result<PairTerm> {
        let key = |k: &KeyRecord| -> Result<ModeKey> {
            let mode = Mode::new(
                FourVector(k.p),
                Branch::from_sign(k.branch)?,
                nalgebra::Vector2::zeros(),
            )?;
            Ok(ModeKey::of(&mode))
        };
        let c = Matrix2::from_fn(|r, s| Complex64::new(self.c[r][s][0], self.c[r][s][1]));
        Ok(PairTerm {
            x: key(&self.x)?,
            y: key(&self.y)?,
            c,
        })
    }
}
