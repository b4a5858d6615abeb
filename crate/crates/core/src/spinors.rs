//! Momentum-space spinor bases and projection operators.
//!
//! Negative-energy momenta are first class: every formula carries the energy sign
//! φ_p explicitly, and m_p = 0 is rejected (it is reachable only as a limit).

use nalgebra::{Matrix2, Matrix2x4, Matrix4x2};
use num_complex::Complex64;

use crate::algebra::{
    from_blocks, gamma, identity, max_entry, sigma_dot, slash, FourVector, Gamma, SpinorMatrix,
};
use crate::constants::ALGEBRA_TOL;
use crate::error::{Error, Result};

/// Two basis spinors side by side (a complex 4×2 matrix).
pub type SpinorBlock = Matrix4x2<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Mass, energy and energy sign of a momentum, rejecting the massless case.
pub(crate) fn kinematics(p: &FourVector) -> Result<(f64, f64, f64)> {
    let m = p.mass()?;
    let phi = p.energy_sign()?;
    if m == 0.0 {
        return Err(Error::MasslessState);
    }
    Ok((m, p.energy(), phi))
}

/// Dirac adjoint of a block, ū = u†γ⁰ (2×4).
pub fn block_bar(u: &SpinorBlock) -> Matrix2x4<Complex64> {
    u.adjoint() * gamma(Gamma::Zero)
}

/// u(p) = K[(m_p+E_p)I₂ ; φ_p p·σ] with K = [2m_p(m_p+E_p)]^{−1/2}.
pub fn u_block(p: &FourVector) -> Result<SpinorBlock> {
    let (m, e, phi) = kinematics(p)?;
    let k = (2.0 * m * (m + e)).powf(-0.5);
    let mut u = SpinorBlock::zeros();
    u.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&(Matrix2::identity() * c(k * (m + e))));
    u.fixed_view_mut::<2, 2>(2, 0)
        .copy_from(&(sigma_dot(p.spatial()) * c(k * phi)));
    Ok(u)
}

/// v(p) = K[φ_p p·σ ; (m_p+E_p)I₂].
pub fn v_block(p: &FourVector) -> Result<SpinorBlock> {
    let (m, e, phi) = kinematics(p)?;
    let k = (2.0 * m * (m + e)).powf(-0.5);
    let mut v = SpinorBlock::zeros();
    v.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&(sigma_dot(p.spatial()) * c(k * phi)));
    v.fixed_view_mut::<2, 2>(2, 0)
        .copy_from(&(Matrix2::identity() * c(k * (m + e))));
    Ok(v)
}

/// Forward projector Λ_u = (m_p I₄ − φ_p slash(p)) / 2m_p.
pub fn lambda_u(p: &FourVector) -> Result<SpinorMatrix> {
    let (m, _, phi) = kinematics(p)?;
    Ok((identity() * c(m) - slash(p) * c(phi)) * c(0.5 / m))
}

/// Backward projector Λ_v = (m_p I₄ + φ_p slash(p)) / 2m_p.
pub fn lambda_v(p: &FourVector) -> Result<SpinorMatrix> {
    let (m, _, phi) = kinematics(p)?;
    Ok((identity() * c(m) + slash(p) * c(phi)) * c(0.5 / m))
}

/// Spin projector P(s) = (I₄ − γ⁵ slash(s)) / 2 for a unit spacelike s.
/// P(−s) is obtained by passing the negated vector.
pub fn spin_projector(s: &FourVector) -> Result<SpinorMatrix> {
    let dot = s.dot(s);
    if (dot - 1.0).abs() > ALGEBRA_TOL.sqrt() {
        return Err(Error::NonUnitSpin { dot });
    }
    Ok((identity() - gamma(Gamma::Five) * slash(s)) * c(0.5))
}

/// Rest-frame spin direction ŝ boosted to the frame of momentum p.
///
/// The boost is the pure boost taking (m_p, 0) to the four-velocity φ_p p / m_p,
/// so the result satisfies s·s = 1 and p·s = 0 for either energy sign.
pub fn boosted_spin(p: &FourVector, rest_axis: [f64; 3]) -> Result<FourVector> {
    let (m, e, phi) = kinematics(p)?;
    let n = rest_axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 {
        return Err(Error::NonUnitSpin { dot: 0.0 });
    }
    let s = rest_axis.map(|x| x / n);
    let q = p.spatial().map(|x| phi * x);
    let sq = s[0] * q[0] + s[1] * q[1] + s[2] * q[2];
    let f = sq / (m * (m + e));
    Ok(FourVector::new(
        sq / m,
        s[0] + f * q[0],
        s[1] + f * q[1],
        s[2] + f * q[2],
    ))
}

/// Chirality sign for [`chirality_projector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    Right,
    Left,
}

/// P± = (I₄ ± γ⁵) / 2.
pub fn chirality_projector(which: Chirality) -> SpinorMatrix {
    let g5 = gamma(Gamma::Five);
    match which {
        Chirality::Right => (identity() + g5) * c(0.5),
        Chirality::Left => (identity() - g5) * c(0.5),
    }
}

/// Block-diagonal p̂·Σ.
pub fn helicity_operator(p: &FourVector) -> Result<SpinorMatrix> {
    let norm = p.spatial_norm();
    if norm == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let hat = p.spatial().map(|x| x / norm);
    let s = sigma_dot(hat);
    let z = Matrix2::zeros();
    Ok(from_blocks(&s, &z, &z, &s))
}

/// Residuals of the block orthonormality relations at p:
/// (ūu − I₂, v̄v + I₂, ūv, v̄u), each as a max entrywise modulus.
pub fn orthonormality_residuals(p: &FourVector) -> Result<[f64; 4]> {
    let u = u_block(p)?;
    let v = v_block(p)?;
    let ub = block_bar(&u);
    let vb = block_bar(&v);
    let id = Matrix2::<Complex64>::identity();
    Ok([
        max_entry(&(ub * u - id)),
        max_entry(&(vb * v + id)),
        max_entry(&(ub * v)),
        max_entry(&(vb * u)),
    ])
}

/// Residuals of the projector relations at p:
/// (Λ_u − uū, Λ_v + vv̄, Λ_u + Λ_v − I₄).
pub fn projector_residuals(p: &FourVector) -> Result<[f64; 3]> {
    let u = u_block(p)?;
    let v = v_block(p)?;
    let lu = lambda_u(p)?;
    let lv = lambda_v(p)?;
    Ok([
        max_entry(&(lu - u * block_bar(&u))),
        max_entry(&(lv + v * block_bar(&v))),
        max_entry(&(lu + lv - identity())),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector4;

    const M: f64 = 0.511;

    fn zero4x2() -> SpinorBlock {
        SpinorBlock::zeros()
    }

    #[test]
    fn rest_frame_columns_are_canonical() {
        let p = FourVector::at_rest(M);
        let u = u_block(&p).unwrap();
        let v = v_block(&p).unwrap();
        let mut eu = zero4x2();
        eu[(0, 0)] = c(1.0);
        eu[(1, 1)] = c(1.0);
        let mut ev = zero4x2();
        ev[(2, 0)] = c(1.0);
        ev[(3, 1)] = c(1.0);
        assert!(max_entry(&(u - eu)) < 1e-15);
        assert!(max_entry(&(v - ev)) < 1e-15);
    }

    #[test]
    fn rest_frame_lambda_u() {
        let lu = lambda_u(&FourVector::at_rest(M)).unwrap();
        let expected = SpinorMatrix::from_diagonal(&Vector4::new(c(1.0), c(1.0), c(0.0), c(0.0)));
        assert!(max_entry(&(lu - expected)) < 1e-15);
    }

    #[test]
    fn negative_energy_u_is_fixed_by_lambda_u() {
        let p = FourVector::on_shell(1.3, [0.4, -0.7, 1.1], -1.0);
        let u = u_block(&p).unwrap();
        let lu = lambda_u(&p).unwrap();
        assert!(max_entry(&(lu * u - u)) < 1e-13);
        let [a, b, cc, d] = orthonormality_residuals(&p).unwrap();
        assert!(a.max(b).max(cc).max(d) < 1e-13);
    }

    #[test]
    fn projector_algebra() {
        let p = FourVector::on_shell(0.9, [1.5, 0.2, -2.0], 1.0);
        let lu = lambda_u(&p).unwrap();
        let lv = lambda_v(&p).unwrap();
        assert!(max_entry(&(lu * lu - lu)) < 1e-12);
        assert!(max_entry(&(lu * lv)) < 1e-12);
        assert!((lu.trace() - c(2.0)).norm() < 1e-12);
        assert!((lv.trace() - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn massless_rejected() {
        let p = FourVector::new(2.0, 0.0, 0.0, 2.0);
        assert_eq!(u_block(&p), Err(Error::MasslessState));
        assert_eq!(lambda_v(&p).unwrap_err(), Error::MasslessState);
    }

    #[test]
    fn spin_projector_rest_frame() {
        let s = FourVector::new(0.0, 0.0, 0.0, 1.0);
        let plus = spin_projector(&s).unwrap();
        let minus = spin_projector(&-s).unwrap();
        assert!(max_entry(&(plus + minus - identity())) < 1e-15);
        assert!(max_entry(&(plus * plus - plus)) < 1e-15);
        assert!(matches!(
            spin_projector(&FourVector::new(0.0, 0.0, 0.0, 2.0)),
            Err(Error::NonUnitSpin { .. })
        ));
    }

    #[test]
    fn boosted_spin_commutes_with_projectors() {
        for sign in [1.0, -1.0] {
            let p = FourVector::on_shell(0.7, [0.3, 1.9, -0.8], sign);
            let s = boosted_spin(&p, [0.2, -0.5, 0.8]).unwrap();
            assert!((s.dot(&s) - 1.0).abs() < 1e-12);
            assert!(p.dot(&s).abs() < 1e-12);
            let ps = spin_projector(&s).unwrap();
            let lu = lambda_u(&p).unwrap();
            let lv = lambda_v(&p).unwrap();
            assert!(max_entry(&(ps * lu - lu * ps)) < 1e-12);
            assert!(max_entry(&(ps * lv - lv * ps)) < 1e-12);
        }
    }

    #[test]
    fn chirality_projectors() {
        let plus = chirality_projector(Chirality::Right);
        let minus = chirality_projector(Chirality::Left);
        assert!(max_entry(&(plus + minus - identity())) == 0.0);
        assert!(max_entry(&(plus * minus)) == 0.0);
        assert!(max_entry(&(plus * plus - plus)) == 0.0);
    }

    #[test]
    fn helicity_along_z() {
        let h = helicity_operator(&FourVector::new(2.0, 0.0, 0.0, 1.0)).unwrap();
        let expected = SpinorMatrix::from_diagonal(&Vector4::new(c(1.0), c(-1.0), c(1.0), c(-1.0)));
        assert!(max_entry(&(h - expected)) < 1e-15);
        assert!(max_entry(&(h * h - identity())) < 1e-15);
        assert_eq!(
            helicity_operator(&FourVector::at_rest(1.0)),
            Err(Error::ZeroMomentum)
        );
    }
}
