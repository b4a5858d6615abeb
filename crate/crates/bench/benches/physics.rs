use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use paradirac::constants::ELECTRON_MASS;
use paradirac::radiative::{axial_divergence_tree, f2_anomalous_moment, uehling_shift};
use paradirac::scattering::mott_dcs;
use paradirac::spinors::{orthonormality_residuals, projector_residuals};
use paradirac::states::UniformGrid;
use paradirac::verify::{run_suite, Suite, VerifyOptions};
use paradirac::{free_evolve, Branch, FourVector};
use paradirac_bench::spiral_state;

fn spinors(c: &mut Criterion) {
    let p = FourVector::on_shell(0.7, [0.3, -1.1, 0.4], -1.0);
    c.bench_function("spinor_identities", |b| {
        b.iter(|| {
            (
                orthonormality_residuals(black_box(&p)),
                projector_residuals(black_box(&p)),
            )
        })
    });
}

fn evolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_evolve");
    for n in [8, 64, 256] {
        let state = spiral_state(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| free_evolve(black_box(s), 0.0, 1.3, Branch::Forward))
        });
    }
    group.finish();
}

fn currents(c: &mut Criterion) {
    let state = spiral_state(8).restricted_to(paradirac::Subspace::Plus);
    let grid = UniformGrid::new(FourVector::new(0.0, 0.0, 0.0, 0.0), [0.2; 4], [5; 4])
        .expect("valid grid");
    c.bench_function("axial_tree_identity_8_modes", |b| {
        b.iter(|| axial_divergence_tree(black_box(&state), ELECTRON_MASS, &grid))
    });
}

fn endpoints(c: &mut Criterion) {
    c.bench_function("mott_dcs_90deg", |b| {
        b.iter(|| mott_dcs(black_box(ELECTRON_MASS), std::f64::consts::FRAC_PI_2, 1.0))
    });
    c.bench_function("f2_anomalous_moment", |b| b.iter(f2_anomalous_moment));
    let mut slow = c.benchmark_group("radiative");
    slow.sample_size(10);
    slow.bench_function("uehling_shift_2s", |b| {
        b.iter(|| uehling_shift(2, 0, black_box(1.0)))
    });
    slow.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("all", |b| {
        b.iter(|| run_suite(Suite::All, &VerifyOptions::default()))
    });
    group.finish();
}

criterion_group!(
    benches,
    spinors,
    evolution,
    currents,
    endpoints,
    verification
);
criterion_main!(benches);
