//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod oracles;

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use paradirac::propagate::{free_evolve, surviving_subspace};
use paradirac::radiative::{
    anomaly_density, epsilon_contraction, f2_anomalous_moment, uehling_potential_with,
    uehling_shift, FieldTensor, UehlingRoute,
};
use paradirac::scattering::{momentum_ratio_mott_factor, mott_ratio};
use paradirac::spinors::u_block;
use paradirac::states::classify_subspace;
use paradirac::twobody::{born_series, BsVector, InteractionKernel, PairSpinor};
use paradirac::verify::{run_suite, CheckResult, Suite, VerifyOptions};
use paradirac::{Branch, FourVector, Mode, SpectralState};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn suite(which: Suite) -> Vec<CheckResult> {
    run_suite(which, &VerifyOptions::default())
}

fn worst(results: &[CheckResult], prefix: &str) -> f64 {
    let matching: Vec<f64> = results
        .iter()
        .filter(|r| r.name.starts_with(prefix))
        .map(|r| r.residual)
        .collect();
    if matching.is_empty() {
        f64::INFINITY
    } else {
        matching.into_iter().fold(0.0, f64::max)
    }
}

fn clifford() -> Verdict {
    let start = Instant::now();
    let results = suite(Suite::Algebra);
    let n = results
        .iter()
        .filter(|r| r.name.starts_with("anticommutator"))
        .count();
    let max = worst(&results, "anticommutator");
    let elapsed = start.elapsed();
    verdict(
        n == 16 && max <= 1e-14 && within(elapsed, 1.0),
        format!(
            "{n} anticommutators, max residual {max:.2e}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn spinors() -> Verdict {
    let start = Instant::now();
    let results = suite(Suite::Spinors);
    let orth = worst(&results, "orthonormality[1000");
    let proj = worst(&results, "projectors[1000");
    let elapsed = start.elapsed();
    verdict(
        orth <= 1e-12 && proj <= 1e-12 && within(elapsed, 5.0),
        format!(
            "1000 momenta: orthonormality {orth:.2e}, projectors {proj:.2e}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn propagation() -> Verdict {
    let start = Instant::now();
    let mut exact = 0;
    let mut coefficient = 0.0_f64;
    for which in [Branch::Forward, Branch::Backward] {
        for dtau in [0.6, -0.6] {
            for branch in [Branch::Forward, Branch::Backward] {
                for energy in [1.0, -1.0] {
                    let p = FourVector::on_shell(0.8, [0.2, 0.1, -0.3], energy);
                    let mode =
                        Mode::basis(p, branch, 1, Complex64::new(0.4, -0.3)).expect("massive");
                    let out = free_evolve(&SpectralState::single(1.0, mode), 0.0, dtau, which)
                        .expect("interval");
                    // survives iff branch·φ equals which·sign(Δτ)
                    let survives = branch.sign() * energy == which.sign() * dtau.signum();
                    if survives == (out.len() == 1) {
                        exact += 1;
                    }
                    if survives && out.len() == 1 {
                        let omega = branch.sign() * energy * 0.8;
                        let expected = mode.a * Complex64::from_polar(dtau.signum(), omega * dtau);
                        coefficient = coefficient.max((out.modes()[0].a - expected).norm());
                        let (kept, _) = surviving_subspace(which, dtau).expect("interval");
                        if classify_subspace(&out.modes()[0]) != kept {
                            exact -= 1;
                        }
                    }
                }
            }
        }
    }
    let results = suite(Suite::Propagate);
    let chain = worst(&results, "semigroup_chain");
    let elapsed = start.elapsed();
    verdict(
        exact == 16 && coefficient <= 1e-13 && chain <= 1e-13 && within(elapsed, 5.0),
        format!(
            "{exact}/16 filtering cases, coefficient error {coefficient:.2e}, length-5 chains {chain:.2e}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn mott() -> Verdict {
    let p = oracles::MASS;
    let mut gap = 0.0_f64;
    let mut variant_gap = 0.0_f64;
    for j in 1..=50 {
        let kappa = PI * j as f64 / 51.0;
        let ratio = mott_ratio(p, kappa).unwrap_or(f64::NAN);
        gap = gap.max((ratio - oracles::mott_ratio(p, kappa)).abs());
        variant_gap = variant_gap.max((ratio - momentum_ratio_mott_factor(p, kappa)).abs());
    }
    let beta = 1e-3;
    let slow = beta * oracles::MASS / (1.0 - beta * beta).sqrt();
    let mut limit = 0.0_f64;
    for j in 1..=50 {
        let kappa = PI * j as f64 / 51.0;
        limit = limit.max((mott_ratio(slow, kappa).unwrap_or(f64::NAN) - 1.0).abs());
    }
    verdict(
        gap <= 1e-10 && limit <= 1e-6,
        format!(
            "|p|=m over 50 angles: spinor-sum oracle gap {gap:.2e}; beta=1e-3 deviation from 1 {limit:.2e}; \
             |p/m|^2 variant differs by up to {variant_gap:.3}"
        ),
    )
}

fn g_minus_two() -> Verdict {
    let start = Instant::now();
    let exact = oracles::ALPHA / (2.0 * PI);
    let value = f2_anomalous_moment().map(|q| q.value).unwrap_or(f64::NAN);
    let rel = (value - exact).abs() / exact;
    let target = (value - 1.16141e-3).abs() / 1.16141e-3;
    let elapsed = start.elapsed();
    verdict(
        rel <= 1e-4 && target <= 1e-4 && within(elapsed, 10.0),
        format!(
            "a_e = {value:.6e}, relative gap {rel:.1e}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn uehling() -> Verdict {
    let start = Instant::now();
    let mut routes = 0.0_f64;
    for i in 0..=40 {
        let mr = 0.01 * (2000.0_f64).powf(i as f64 / 40.0);
        let r = mr / oracles::MASS;
        let a = uehling_potential_with(r, 1.0, UehlingRoute::Quadratic)
            .map(|q| q.value)
            .unwrap_or(f64::NAN);
        let b = uehling_potential_with(r, 1.0, UehlingRoute::Hyperbolic)
            .map(|q| q.value)
            .unwrap_or(f64::NAN);
        routes = routes.max(((a - b) / a).abs());
    }
    let coarse = oracles::uehling_2s_mhz(1.0, 32);
    let fine = oracles::uehling_2s_mhz(1.0, 64);
    let shift = uehling_shift(2, 0, 1.0).map(|s| s.mhz).unwrap_or(f64::NAN);
    let rel = ((shift - fine) / fine).abs();
    let settled = ((coarse - fine) / fine).abs();
    let elapsed = start.elapsed();
    verdict(
        routes <= 1e-6
            && rel <= 0.01
            && settled <= 1e-3
            && shift < 0.0
            && (10.0..100.0).contains(&shift.abs())
            && within(elapsed, 30.0),
        format!(
            "routes agree to {routes:.1e}; 2S shift {shift:.3} MHz vs oracle {fine:.3} MHz ({:.2e} relative), {:.3} s",
            rel,
            elapsed.as_secs_f64()
        ),
    )
}

fn currents() -> Verdict {
    let results = suite(Suite::Currents);
    let vector = worst(&results, "vector_divergence[");
    let axial = worst(&results, "axial_tree_identity");
    let fields = [
        ([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]),
        ([0.3, -1.2, 0.7], [0.5, 0.4, -0.9]),
        ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        ([-2.5, 0.125, 3.0], [0.75, -1.5, 0.2]),
    ];
    let charge = (4.0 * PI * oracles::ALPHA).sqrt();
    let exact = fields.iter().all(|(e, b)| {
        let oracle = oracles::epsilon_contraction(*e, *b);
        let f = FieldTensor::from_fields(*e, *b);
        epsilon_contraction(&f) == oracle
            && anomaly_density(&f, charge) == -(charge * charge) / (16.0 * PI * PI) * oracle
    });
    verdict(
        vector <= 1e-10 && axial <= 1e-10 && exact,
        format!(
            "8-mode states: divergence {vector:.2e}, axial identity {axial:.2e}; \
             permutation oracle {}",
            if exact { "bit-exact" } else { "mismatch" }
        ),
    )
}

fn two_body() -> Verdict {
    let start = Instant::now();
    let results = suite(Suite::Twobody);
    let names = [
        "pauli_exclusion",
        "s_matrix_sign_flip",
        "separability_conserved",
        "bethe_salpeter_geometric",
    ];
    let library = names.iter().map(|n| worst(&results, n)).fold(0.0, f64::max);
    let (mx, my, mass, g) = (0.5, 0.7, 1.9, 0.03);
    let px = FourVector::on_shell(mx, [0.2, -0.1, 0.3], 1.0);
    let py = FourVector::on_shell(my, [-0.2, 0.1, -0.3], 1.0);
    let (ux, uy) = (
        u_block(&px).expect("massive"),
        u_block(&py).expect("massive"),
    );
    let psi = PairSpinor::from_fn(|i, _| ux[(i / 4, 0)] * uy[(i % 4, 1)]);
    let start_vector = BsVector::new(vec![(px, py)], vec![psi]).expect("matching sizes");
    let kernel = InteractionKernel::contact(1, Complex64::new(g, 0.0));
    let lambda = 2.0 * g / (mass - mx - my);
    let oracle_gap = match born_series(&start_vector, &kernel, mass, 3) {
        Ok(sums) => sums
            .iter()
            .enumerate()
            .map(|(n, s)| {
                let factor = (1.0 - lambda.powi(n as i32 + 1)) / (1.0 - lambda);
                (s.values[0] - psi * Complex64::new(factor, 0.0)).norm() / psi.norm()
            })
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    let elapsed = start.elapsed();
    verdict(
        library <= 1e-12 && oracle_gap <= 1e-12 && within(elapsed, 10.0),
        format!(
            "Pauli, S_fi sign flip, separability, Born series: worst {library:.2e}; \
             moving-pair geometric oracle {oracle_gap:.2e}, {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn full_verify() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_paradirac");
    let mut outputs = Vec::new();
    let mut slowest = 0.0_f64;
    for _ in 0..2 {
        let start = Instant::now();
        match Command::new(bin)
            .args(["verify", "--suite", "all"])
            .output()
        {
            Ok(out) => outputs.push(out),
            Err(e) => return verdict(false, format!("could not run {bin}: {e}")),
        }
        slowest = slowest.max(start.elapsed().as_secs_f64());
    }
    let codes: Vec<Option<i32>> = outputs.iter().map(|o| o.status.code()).collect();
    let identical = outputs[0].stdout == outputs[1].stdout;
    verdict(
        codes.iter().all(|c| *c == Some(0)) && identical && slowest < 120.0,
        format!("exit codes {codes:?}, identical reports {identical}, slowest run {slowest:.2} s"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("clifford suite", clifford),
        ("spinor suite", spinors),
        ("subspace filtering and semigroup", propagation),
        ("mott ratio", mott),
        ("g-2 endpoint", g_minus_two),
        ("uehling endpoint", uehling),
        ("current identities", currents),
        ("two-body suite", two_body),
        ("full verify run", full_verify),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.passed {
            failures += 1;
        }
        println!(
            "{} criterion {} ({name}): {}",
            if v.passed { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
