//! Reference computations written independently of the library code paths.

use std::f64::consts::PI;

pub const MASS: f64 = 0.510_998_95;
pub const ALPHA: f64 = 1.0 / 137.035_999;
const PLANCK_MEV_S: f64 = 4.135_667_696e-21;

/// Mott over Rutherford from an explicit real spinor sum.
///
/// For momenta in the x-z plane the Dirac-representation spinors are real and
/// ū_f γ⁰ u_i = u_f·u_i, so ½Σ|ū_f γ⁰ u_i|² needs only dot products. With
/// A⁰ = Ze/|q|² the ratio to Z²α²E²/(4p⁴ sin⁴(κ/2)) is m²/E² times that sum.
pub fn mott_ratio(p: f64, kappa: f64) -> f64 {
    let e = (p * p + MASS * MASS).sqrt();
    let spinor = |px: f64, pz: f64, r: usize| {
        let k = 1.0 / (2.0 * MASS * (MASS + e)).sqrt();
        let chi = if r == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
        [
            k * (MASS + e) * chi[0],
            k * (MASS + e) * chi[1],
            k * (pz * chi[0] + px * chi[1]),
            k * (px * chi[0] - pz * chi[1]),
        ]
    };
    let mut sum = 0.0;
    for r in 0..2 {
        for s in 0..2 {
            let ui = spinor(0.0, p, s);
            let uf = spinor(p * kappa.sin(), p * kappa.cos(), r);
            let overlap: f64 = ui.iter().zip(&uf).map(|(a, b)| a * b).sum();
            sum += overlap * overlap;
        }
    }
    0.5 * sum * MASS * MASS / (e * e)
}

/// Gauss–Legendre nodes and weights on [0, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut derivative = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                derivative = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / derivative;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
            (0.5 * (1.0 - x), 0.5 * w)
        })
        .collect()
}

/// 2S vacuum-polarization shift in MHz with the radial integral done first and
/// in closed form, leaving a one-dimensional spectral integral on `n` nodes.
///
/// ΔE = −Zα(2α/3π) ∫₁^∞ dt g(t) M(2mt), M(c) = ∫₀^∞ r R₂₀² e^{−cr} dr,
/// with t = 1/u and u = 1 − v² to smooth both ends.
pub fn uehling_2s_mhz(z: f64, n: usize) -> f64 {
    let a = 1.0 / (z * ALPHA * MASS);
    let moment = |c: f64| {
        let l = c + 1.0 / a;
        4.0 / (2.0 * a).powi(3)
            * (1.0 / l.powi(2) - 2.0 / (a * l.powi(3)) + 1.5 / (a * a * l.powi(4)))
    };
    let integral: f64 = gauss_legendre(n)
        .into_iter()
        .map(|(v, w)| {
            let u = 1.0 - v * v;
            let root = v * (1.0 + u).sqrt();
            let g = (1.0 + 0.5 * u * u) * u * root;
            w * 2.0 * v * g * moment(2.0 * MASS / u) / (u * u)
        })
        .sum();
    let mev = -z * ALPHA * (2.0 * ALPHA / (3.0 * PI)) * integral;
    mev / PLANCK_MEV_S / 1e6
}

/// ε^{μνρσ}F_{μν}F_{ρσ} by a sum over all 4⁴ index tuples in lexicographic
/// order, with F_{0j} = −E_j and F_{ij} = ε_ijk B_k.
pub fn epsilon_contraction(e: [f64; 3], b: [f64; 3]) -> f64 {
    let mut f = [[0.0; 4]; 4];
    for j in 0..3 {
        f[0][j + 1] = -e[j];
        f[j + 1][0] = e[j];
    }
    for (i, j, k) in [(1, 2, 2), (2, 3, 0), (3, 1, 1)] {
        f[i][j] = b[k];
        f[j][i] = -b[k];
    }
    let mut sum = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let idx = [mu, nu, rho, sigma];
                    let mut sign = 1.0;
                    let mut distinct = true;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if idx[i] == idx[j] {
                                distinct = false;
                            } else if idx[i] > idx[j] {
                                sign = -sign;
                            }
                        }
                    }
                    if distinct {
                        sum += sign * f[mu][nu] * f[rho][sigma];
                    }
                }
            }
        }
    }
    sum
}
