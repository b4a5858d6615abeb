use nalgebra::Vector2;
use num_complex::Complex64;

use paradirac::constants::{unit_charge, ELECTRON_MASS};
use paradirac::propagate::free_evolve;
use paradirac::radiative::axial_divergence_tree;
use paradirac::scattering::{particle_mode, s1_amplitude};
use paradirac::spinors::{chirality_projector, helicity_operator, u_block, v_block, Chirality};
use paradirac::states::{Branch, Mode, SpectralState, UniformGrid};
use paradirac::twobody::semiclassical_potential;
use paradirac::{ExternalPotential, FourVector};

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid() -> UniformGrid {
    UniformGrid::new(FourVector::new(-0.3, 0.1, -0.2, 0.4), [0.3; 4], [5; 4]).unwrap()
}

#[test]
fn amplitude_is_invariant_under_a_global_parameter_shift() {
    let a = Vector2::new(cx(0.6, -0.2), cx(0.1, 0.7));
    let b = Vector2::new(cx(-0.3, 0.4), cx(0.8, 0.0));
    let init = Mode::new(
        FourVector::on_shell(ELECTRON_MASS, [0.0, 0.0, 0.4], 1.0),
        Branch::Forward,
        a,
    )
    .unwrap();
    let fin = Mode::new(
        FourVector::on_shell(ELECTRON_MASS, [0.3, 0.0, -0.07f64.sqrt()], 1.0),
        Branch::Forward,
        b,
    )
    .unwrap();
    let pot = ExternalPotential::Coulomb {
        z: 1.0,
        charge: unit_charge(),
        screening: 0.1,
    };
    let base = s1_amplitude(&init, &fin, &pot, unit_charge(), 1.0)
        .unwrap()
        .value;
    assert!(base.norm() > 1e-3);
    for shift in [0.3, 1.7, 12.5] {
        let move_to = |m: &Mode| {
            let s =
                free_evolve(&SpectralState::single(1.0, *m), 0.0, shift, Branch::Forward).unwrap();
            s.modes()[0]
        };
        let (i2, f2) = (move_to(&init), move_to(&fin));
        assert!(
            (i2.a - init.a).norm() > 1e-3,
            "shift must change the coefficients"
        );
        let shifted = s1_amplitude(&i2, &f2, &pot, unit_charge(), 1.0)
            .unwrap()
            .value;
        assert!((shifted - base).norm() <= 1e-12 * base.norm());
    }
}

#[test]
fn mutual_scattering_is_symmetric() {
    let (p, m) = (0.4, ELECTRON_MASS);
    let theta: f64 = 0.9;
    let n = [theta.sin(), 0.0, theta.cos()];
    let on = |s: [f64; 3]| FourVector::on_shell(m, s, 1.0);
    let first_in = particle_mode(on([0.0, 0.0, p]), 0).unwrap();
    let first_out = particle_mode(on(n.map(|x| p * x)), 1)
        .unwrap()
        .scaled(cx(0.6, 0.8));
    let second_in = particle_mode(on([0.0, 0.0, -p]), 1).unwrap();
    let second_out = particle_mode(on(n.map(|x| -p * x)), 0)
        .unwrap()
        .scaled(cx(0.0, 1.0));
    let single = |mode: &Mode| SpectralState::single(1.0, *mode);
    let e = unit_charge();
    let by_second = semiclassical_potential(&single(&second_out), &single(&second_in), e).unwrap();
    let by_first = semiclassical_potential(&single(&first_out), &single(&first_in), e).unwrap();
    let one = s1_amplitude(&first_in, &first_out, &by_second, e, 1.0)
        .unwrap()
        .value;
    let two = s1_amplitude(&second_in, &second_out, &by_first, e, 1.0)
        .unwrap()
        .value;
    assert!(one.norm() > 1e-6);
    assert!((one - two).norm() <= 1e-12 * one.norm(), "{one} vs {two}");
}

#[test]
fn axial_identity_vanishes_in_the_massless_limit() {
    let spatial = [[0.4, -0.1, 0.3], [-0.2, 0.5, 0.1], [0.0, 0.3, -0.6]];
    let mut previous = f64::INFINITY;
    for m in [0.1, 0.03, 0.01] {
        let modes = spatial.iter().enumerate().map(|(i, s)| {
            let p = FourVector::on_shell(m, *s, 1.0);
            let scale = (m / p.energy()).sqrt();
            let a = Vector2::new(cx(0.7, 0.1 * i as f64), cx(-0.2, 0.5)) * cx(scale, 0.0);
            Mode::new(p, Branch::Forward, a).unwrap()
        });
        let state = SpectralState::from_modes(1.0, modes);
        let (lhs, rhs) = axial_divergence_tree(&state, m, &grid()).unwrap();
        let worst = lhs.iter().chain(&rhs).map(|z| z.norm()).fold(0.0, f64::max);
        let gap = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(gap <= 1e-10);
        assert!(worst <= 10.0 * m, "m = {m}: {worst}");
        assert!(worst < previous);
        previous = worst;
    }
}

#[test]
fn single_mode_axial_sides_are_constant_and_equal() {
    let p = FourVector::on_shell(0.8, [0.2, -0.4, 0.1], 1.0);
    let mode = Mode::new(
        p,
        Branch::Forward,
        Vector2::new(cx(0.3, 0.2), cx(0.5, -0.6)),
    )
    .unwrap();
    let (lhs, rhs) =
        axial_divergence_tree(&SpectralState::single(1.0, mode), 0.8, &grid()).unwrap();
    for (a, b) in lhs.iter().zip(&rhs) {
        assert!((a - lhs[0]).norm() <= 1e-14 && (b - rhs[0]).norm() <= 1e-14);
        assert!((a - b).norm() <= 1e-12);
    }
}

#[test]
fn chiral_parts_approach_helicity_eigenstates() {
    let direction = [0.36, -0.48, 0.8];
    for ratio in [1e-4, 1e-5] {
        for sign in [1.0, -1.0] {
            let e = 1.0 / ratio;
            let m: f64 = 1.0;
            let pmag = (e * e - m * m).sqrt();
            let p = FourVector::on_shell(m, direction.map(|x| x * pmag), sign);
            let h = helicity_operator(&p).unwrap();
            let block = u_block(&p).unwrap();
            for (chirality, s) in [(Chirality::Right, 1.0), (Chirality::Left, -1.0)] {
                let proj = chirality_projector(chirality) * block;
                for col in 0..2 {
                    let w = proj.column(col).into_owned();
                    let w = w / cx(w.norm(), 0.0);
                    let residual = (h * w - w * cx(s * sign, 0.0)).norm();
                    assert!(
                        residual <= 10.0 * ratio,
                        "ratio {ratio}, sign {sign}: {residual}"
                    );
                }
            }
        }
    }
}

#[test]
fn tpc_image_of_a_spin_eigenstate_is_an_antiparticle_eigenstate() {
    use paradirac::spinors::{boosted_spin, lambda_v, spin_projector};
    let p = FourVector::on_shell(0.9, [0.3, 0.1, -0.4], 1.0);
    let s = boosted_spin(&p, [0.0, 0.0, 1.0]).unwrap();
    let proj = spin_projector(&s).unwrap();
    let u = u_block(&p).unwrap();
    let w = proj * u.column(0).into_owned();
    let (mode, residual) = Mode::from_spinor(p, Branch::Forward, &w).unwrap();
    assert!(residual < 1e-12);
    let image = paradirac::states::tpc(&SpectralState::single(1.0, mode)).modes()[0];
    let q = image.p;
    assert!((q - (-p)).max_abs() < 1e-14);
    let x = image.spinor();
    let lv = lambda_v(&q).unwrap();
    let ps = spin_projector(&boosted_spin(&q, [0.0, 0.0, -1.0]).unwrap()).unwrap();
    let pv = -(v_block(&q).unwrap() * paradirac::spinors::block_bar(&v_block(&q).unwrap()));
    assert!((lv - pv).norm() < 1e-12);
    assert!((lv * x - x).norm() <= 1e-12 * x.norm());
    assert!((ps * x - x).norm() <= 1e-12 * x.norm());
}

mod uehling {
    use paradirac::radiative::uehling_shift;

    // from the swapped-order spectral oracle (closed-form radial moments, 64-node Gauss-Legendre)
    const TWO_S_MHZ: f64 = -26.887_429;

    #[test]
    fn two_s_shift_matches_frozen_oracle() {
        let s = uehling_shift(2, 0, 1.0).unwrap();
        assert!(((s.mhz - TWO_S_MHZ) / TWO_S_MHZ).abs() < 0.01, "{}", s.mhz);
    }

    #[test]
    fn one_s_shift_scales_as_fourth_power_of_charge() {
        let one = uehling_shift(1, 0, 1.0).unwrap().mev;
        let two = uehling_shift(1, 0, 2.0).unwrap().mev;
        let ratio = two / one / 16.0;
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    }
}
