//! Seeded self-check suites: each check evaluates one identity on generated
//! inputs and reports the largest residual seen.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    anticommutator, clifford_residuals, dirac_adjoint, gamma, gamma_mu, identity, max_entry, slash,
    FourVector, Gamma,
};
use crate::propagate::{
    compose_unchecked, evolve_chain, free_evolve, influence_conjugation_check, surviving_subspace,
};
use crate::radiative::{
    anomaly_density, axial_divergence_tree, vector_divergence_check, FieldTensor,
};
use crate::scattering::{particle_mode, ExternalPotential};
use crate::spinors::{
    boosted_spin, chirality_projector, lambda_u, lambda_v, orthonormality_residuals,
    projector_residuals, spin_projector, Chirality,
};
use crate::states::{
    charge_conjugate, classify_subspace, concatenated_current, inner_product, parity, time_reverse,
    tpc, Branch, Mode, SpectralState, Subspace, UniformGrid,
};
use crate::twobody::{
    antisymmetrize, born_series, s2_first_order, two_evolve, two_particle_conjugation_check,
    BsVector, InteractionKernel, PairSpinor, TwoParticleState,
};

/// Named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Spinors,
    Propagate,
    Twobody,
    Currents,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "all",
        "algebra",
        "spinors",
        "propagate",
        "twobody",
        "currents",
    ];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Algebra,
                Suite::Spinors,
                Suite::Propagate,
                Suite::Twobody,
                Suite::Currents,
            ],
            other => vec![other],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Spinors => "spinors",
            Suite::Propagate => "propagate",
            Suite::Twobody => "twobody",
            Suite::Currents => "currents",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        match s {
            "all" => Ok(Suite::All),
            "algebra" => Ok(Suite::Algebra),
            "spinors" => Ok(Suite::Spinors),
            "propagate" => Ok(Suite::Propagate),
            "twobody" => Ok(Suite::Twobody),
            "currents" => Ok(Suite::Currents),
            other => Err(format!(
                "unknown suite '{other}'; expected one of {}",
                Suite::NAMES.join(", ")
            )),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}/{}  max_residual={:.3e}  tol={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.residual,
            self.tolerance
        )
    }
}

/// Settings for a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
    pub random_momenta: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            tolerance: None,
            random_momenta: 1000,
        }
    }
}

struct Recorder {
    suite: Suite,
    tolerance: Option<f64>,
    results: Vec<CheckResult>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.results.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            residual,
            tolerance: self.tolerance.unwrap_or(tolerance),
        });
    }
}

/// Runs a suite (or all of them) deterministically for the given seed.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for member in suite.members() {
        let mut rec = Recorder {
            suite: member,
            tolerance: opts.tolerance,
            results: Vec::new(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        match member {
            Suite::Algebra => algebra_checks(&mut rec),
            Suite::Spinors => spinor_checks(&mut rec, &mut rng, opts.random_momenta),
            Suite::Propagate => propagate_checks(&mut rec, &mut rng),
            Suite::Twobody => twobody_checks(&mut rec, &mut rng),
            Suite::Currents => current_checks(&mut rec, &mut rng),
            Suite::All => unreachable!("expanded by members()"),
        }
        out.extend(rec.results);
    }
    out
}

/// Timelike momentum with mass in [0.1, 3], spatial parts in [−5, 5] and either energy sign.
pub fn random_momentum(rng: &mut impl Rng) -> FourVector {
    let m = rng.random_range(0.1..3.0);
    on_shell_random(rng, m)
}

fn on_shell_random(rng: &mut impl Rng, m: f64) -> FourVector {
    let spatial = [
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
    ];
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    FourVector::on_shell(m, spatial, sign)
}

fn random_coefficients(rng: &mut impl Rng) -> Vector2<Complex64> {
    Vector2::from_fn(|_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// `n` equal-mass modes with random momenta (|p| ≤ 1), branches and coefficients.
/// With `plus_only` every mode lies in S₊.
pub fn random_equal_mass_state(
    rng: &mut impl Rng,
    mass: f64,
    n: usize,
    plus_only: bool,
) -> SpectralState {
    let modes = (0..n).map(|_| {
        let spatial = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = FourVector::on_shell(mass, spatial, sign);
        let branch = if plus_only {
            if sign > 0.0 {
                Branch::Forward
            } else {
                Branch::Backward
            }
        } else if rng.random_bool(0.5) {
            Branch::Forward
        } else {
            Branch::Backward
        };
        Mode::new(p, branch, random_coefficients(rng)).expect("massive on-shell momentum")
    });
    SpectralState::from_modes(1.0, modes)
}

fn algebra_checks(rec: &mut Recorder) {
    for ((mu, nu), r) in clifford_residuals() {
        rec.check(format!("anticommutator[{mu},{nu}]"), r, 1e-14);
    }
    let g5 = gamma(Gamma::Five);
    rec.check("gamma5_square", max_entry(&(g5 * g5 - identity())), 1e-14);
    let anti = (0..4)
        .map(|mu| max_entry(&anticommutator(&g5, &gamma_mu(mu))))
        .fold(0.0, f64::max);
    rec.check("gamma5_anticommutes", anti, 1e-14);
    let herm = max_entry(&(gamma(Gamma::Zero).adjoint() - gamma(Gamma::Zero)));
    let anti_herm = (1..4)
        .map(|j| max_entry(&(gamma_mu(j).adjoint() + gamma_mu(j))))
        .fold(0.0, f64::max);
    rec.check("hermiticity", herm.max(anti_herm), 0.0);
    let p = FourVector::new(1.3, -0.2, 0.7, 0.4);
    rec.check(
        "slash_self_adjoint",
        max_entry(&(dirac_adjoint(&slash(&p)) - slash(&p))),
        1e-15,
    );
    let sq = slash(&p) * slash(&p) + identity() * Complex64::new(p.dot(&p), 0.0);
    rec.check("slash_square", max_entry(&sq), 1e-14);
}

fn spinor_checks(rec: &mut Recorder, rng: &mut impl Rng, n: usize) {
    let mut orth = 0.0_f64;
    let mut proj = 0.0_f64;
    let mut spin = 0.0_f64;
    let mut failures = 0;
    for _ in 0..n {
        let p = random_momentum(rng);
        match (orthonormality_residuals(&p), projector_residuals(&p)) {
            (Ok(o), Ok(q)) => {
                orth = o.iter().fold(orth, |a, &b| a.max(b));
                proj = q.iter().fold(proj, |a, &b| a.max(b));
            }
            _ => failures += 1,
        }
        let axis = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if let (Ok(s), Ok(lu), Ok(lv)) = (boosted_spin(&p, axis), lambda_u(&p), lambda_v(&p)) {
            if let (Ok(ps), Ok(pm)) = (spin_projector(&s), spin_projector(&-s)) {
                let r = max_entry(&(ps * lu - lu * ps))
                    .max(max_entry(&(ps * lv - lv * ps)))
                    .max(max_entry(&(ps + pm - identity())));
                spin = spin.max(r / (1.0 + p.max_abs()));
            }
        }
    }
    rec.check(
        format!("orthonormality[{n} momenta]"),
        if failures > 0 { f64::INFINITY } else { orth },
        1e-12,
    );
    rec.check(
        format!("projectors[{n} momenta]"),
        if failures > 0 { f64::INFINITY } else { proj },
        1e-12,
    );
    rec.check("spin_projectors_commute", spin, 1e-12);
    let right = chirality_projector(Chirality::Right);
    let left = chirality_projector(Chirality::Left);
    rec.check(
        "chirality_projectors",
        max_entry(&(right * left)).max(max_entry(&(right + left - identity()))),
        0.0,
    );
    let mut sym = 0.0_f64;
    for _ in 0..20 {
        let mass = rng.random_range(0.2..2.0);
        let s = random_equal_mass_state(rng, mass, 4, false);
        let c2 = charge_conjugate(&charge_conjugate(&s)).distance(&s);
        let p2 = parity(&parity(&s)).distance(&s);
        let t2 = time_reverse(&time_reverse(&s)).distance(&s.scaled(Complex64::new(-1.0, 0.0)));
        let x2 = tpc(&tpc(&s)).distance(&s.scaled(Complex64::new(-1.0, 0.0)));
        sym = sym.max(c2).max(p2).max(t2).max(x2);
    }
    rec.check("discrete_symmetry_squares", sym, 1e-12);
}

fn propagate_checks(rec: &mut Recorder, rng: &mut impl Rng) {
    let mut mismatches = 0.0_f64;
    let mut coeff = 0.0_f64;
    for which in [Branch::Forward, Branch::Backward] {
        for dtau in [0.8, -0.8] {
            for branch in [Branch::Forward, Branch::Backward] {
                for sign in [1.0, -1.0] {
                    let p = FourVector::on_shell(0.7, [0.3, -0.4, 0.5], sign);
                    let mode = Mode::new(
                        p,
                        branch,
                        Vector2::new(Complex64::new(0.6, 0.2), Complex64::new(-0.3, 0.5)),
                    )
                    .expect("massive momentum");
                    let s = SpectralState::single(1.0, mode);
                    let out = free_evolve(&s, 0.0, dtau, which).expect("nonzero interval");
                    let (keep, factor) = surviving_subspace(which, dtau).expect("nonzero interval");
                    let expected_keep = classify_subspace(&mode) == keep;
                    if expected_keep != (out.len() == 1) {
                        mismatches += 1.0;
                    }
                    if expected_keep {
                        let phase = Complex64::from_polar(factor, mode.frequency() * dtau);
                        coeff = coeff.max(out.distance(&s.scaled(phase)));
                    }
                }
            }
        }
    }
    rec.check("filtering[16 cases]", mismatches.max(coeff), 1e-13);
    let mut chain = 0.0_f64;
    let mut outside = 0.0_f64;
    for _ in 0..50 {
        let mass = rng.random_range(0.2..2.0);
        let s = random_equal_mass_state(rng, mass, 4, false);
        let mut taus: Vec<f64> = (0..6).map(|_| rng.random_range(-3.0..3.0)).collect();
        taus.sort_by(f64::total_cmp);
        if rng.random_bool(0.5) {
            taus.reverse();
        }
        let which = if rng.random_bool(0.5) {
            Branch::Forward
        } else {
            Branch::Backward
        };
        match (
            evolve_chain(&s, &taus, which),
            free_evolve(&s, taus[0], taus[5], which),
        ) {
            (Ok(c), Ok(d)) => chain = chain.max(c.distance(&d)),
            _ => chain = f64::INFINITY,
        }
        let (a, b) = (taus[0], taus[5]);
        let beyond = b + (b - a).signum() * 0.5;
        match compose_unchecked(&s, a, beyond, b, which) {
            Ok(c) => outside = outside.max(if c.is_empty() { 0.0 } else { 1.0 }),
            Err(_) => outside = f64::INFINITY,
        }
    }
    rec.check("semigroup_chain[length 5]", chain, 1e-13);
    rec.check("semigroup_outside_interval_empty", outside, 0.0);
    let mut conj = 0.0_f64;
    for _ in 0..10 {
        let momenta: Vec<FourVector> = (0..8).map(|_| random_momentum(rng)).collect();
        let dx = FourVector::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let dtau = rng.random_range(0.1..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        conj = conj.max(influence_conjugation_check(&dx, dtau, &momenta).unwrap_or(f64::INFINITY));
    }
    rec.check("influence_conjugation[8 modes]", conj, 1e-12);
}

fn twobody_checks(rec: &mut Recorder, rng: &mut impl Rng) {
    let m = 0.511;
    let p1 = FourVector::on_shell(m, [0.1, 0.0, 0.3], 1.0);
    let p2 = FourVector::on_shell(m, [0.0, -0.2, 0.1], 1.0);
    let a = Mode::new(p1, Branch::Forward, random_coefficients(rng)).expect("massive");
    let b = Mode::new(p2, Branch::Forward, random_coefficients(rng)).expect("massive");
    rec.check(
        "pauli_exclusion",
        if antisymmetrize(&a, &a, 1.0).is_err() {
            0.0
        } else {
            1.0
        },
        0.0,
    );
    let f = antisymmetrize(&a, &b, 1.0).expect("distinct modes");
    rec.check(
        "fermionic_swap",
        f.swapped().distance(&f.scaled(Complex64::new(-1.0, 0.0))),
        1e-15,
    );
    let q1 = FourVector::new(p1.time(), 0.3, 0.0, 0.1);
    let fin_a = particle_mode(q1, 0).expect("massive");
    let fin = antisymmetrize(&fin_a, &b, 1.0).expect("distinct modes");
    let fin_swapped = antisymmetrize(&b, &fin_a, 1.0).expect("distinct modes");
    let pot = ExternalPotential::Coulomb {
        z: 1.0,
        charge: 0.3,
        screening: 0.05,
    };
    let sign_flip = match (
        s2_first_order(&f, &fin, &pot, 0.3, &pot, 0.3),
        s2_first_order(&f, &fin_swapped, &pot, 0.3, &pot, 0.3),
    ) {
        (Ok(x), Ok(y)) if x.first.value.norm() > 1e-6 => {
            (x.first.value + y.first.value).norm() / x.first.value.norm()
        }
        _ => f64::INFINITY,
    };
    rec.check("s_matrix_sign_flip", sign_flip, 1e-12);
    let product = TwoParticleState::product(1.0, Complex64::new(1.0, 0.0), &a, &b);
    let evolved = two_evolve(&product, 0.0, 1.3, Branch::Forward)
        .map(|s| s.entanglement_ratio())
        .unwrap_or(f64::INFINITY);
    rec.check("separability_conserved", evolved, 1e-12);
    let conj = two_particle_conjugation_check(
        &FourVector::new(0.2, -0.1, 0.4, 0.3),
        &FourVector::new(-0.3, 0.5, 0.0, 0.2),
        0.7,
        &[(p1, p2), (random_momentum(rng), random_momentum(rng))],
    )
    .map(|r| r.minus_sign)
    .unwrap_or(f64::INFINITY);
    rec.check("two_particle_conjugation", conj, 1e-12);
    let grid = vec![(FourVector::at_rest(m), FourVector::at_rest(m))];
    let mut v0 = PairSpinor::zeros();
    v0[0] = Complex64::new(1.0, 0.0);
    let psi = BsVector::new(grid, vec![v0]).expect("matching lengths");
    let (mass, g) = (1.3, 0.04);
    let lambda = 2.0 * g / (mass - 2.0 * m);
    let series = born_series(
        &psi,
        &InteractionKernel::contact(1, Complex64::new(g, 0.0)),
        mass,
        3,
    );
    let geometric = match series {
        Ok(sums) => sums
            .iter()
            .enumerate()
            .map(|(n, s)| {
                let expected = (1.0 - lambda.powi(n as i32 + 1)) / (1.0 - lambda);
                (s.values[0][0] - expected).norm()
            })
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    rec.check("bethe_salpeter_geometric[3 steps]", geometric, 1e-12);
}

fn current_checks(rec: &mut Recorder, rng: &mut impl Rng) {
    let grid = UniformGrid::new(FourVector::new(-0.5, -0.5, -0.5, -0.5), [0.25; 4], [5; 4])
        .expect("valid grid");
    let mut vector = 0.0_f64;
    let mut axial = 0.0_f64;
    for _ in 0..10 {
        let mass = rng.random_range(0.3..1.5);
        let s = random_equal_mass_state(rng, mass, 8, false);
        vector = vector.max(vector_divergence_check(&s, &grid));
        let plus = random_equal_mass_state(rng, mass, 8, true);
        axial = axial.max(match axial_divergence_tree(&plus, mass, &grid) {
            Ok((lhs, rhs)) => lhs
                .iter()
                .zip(&rhs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        });
    }
    rec.check("vector_divergence[8 modes]", vector, 1e-10);
    rec.check("axial_tree_identity[8 modes]", axial, 1e-10);
    let s = random_equal_mass_state(rng, 0.8, 3, false);
    let norm = inner_product(&s, &s)
        .map(|z| z.im.abs())
        .unwrap_or(f64::INFINITY);
    rec.check("inner_product_real", norm, 1e-12);
    let fd_grid = UniformGrid::new(FourVector::new(0.1, 0.2, -0.3, 0.4), [1e-2; 4], [5; 4])
        .expect("valid grid");
    let j = concatenated_current(&s);
    let fd = j
        .sample(&fd_grid)
        .divergence_fd()
        .iter()
        .map(|(_, d)| d.norm())
        .fold(0.0, f64::max);
    rec.check(
        "vector_divergence_finite_difference",
        fd / j.max_coefficient().max(1e-300),
        1e-8,
    );
    let mut anomaly = 0.0_f64;
    for _ in 0..10 {
        let e: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let b: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let dot = e[0] * b[0] + e[1] * b[1] + e[2] * b[2];
        let charge = crate::constants::unit_charge();
        let value = anomaly_density(&FieldTensor::from_fields(e, b), charge);
        anomaly = anomaly.max((value - charge * charge * dot / (2.0 * PI * PI)).abs());
    }
    rec.check("anomaly_e_dot_b", anomaly, 1e-15);
    let plus = random_equal_mass_state(rng, 0.8, 4, true);
    let in_plus = plus
        .modes()
        .iter()
        .all(|m| classify_subspace(m) == Subspace::Plus);
    rec.check("axial_states_in_plus", if in_plus { 0.0 } else { 1.0 }, 0.0);
}
