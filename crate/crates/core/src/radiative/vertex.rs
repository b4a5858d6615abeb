//! Magnetic form factor of the one-loop vertex in Feynman-parameter form.
//!
//! F₂(t) = (α/2π) ∫ dx dy dz δ(1 − x − y − z) 2z(1 − z)/Δ, Δ = (1 − z)² + t·x·y,
//! with t = q·q/m² ≥ 0 the spacelike momentum transfer in electron-mass units.

use std::cell::Cell;
use std::f64::consts::PI;

use crate::constants::ALPHA;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Quadrature, QuadratureOptions};

/// F₂(t) for coupling α by nested adaptive quadrature over the simplex.
pub fn f2_form_factor(t: f64, alpha: f64, rel_tol: f64) -> Result<Quadrature> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "momentum transfer must be ≥ 0, got {t}"
        )));
    }
    let inner_opts = QuadratureOptions {
        rel_tol: rel_tol * 0.1,
        abs_tol: 1e-300,
        max_panels: 400,
    };
    let outer_opts = QuadratureOptions {
        rel_tol,
        abs_tol: 1e-300,
        max_panels: 400,
    };
    let failure: Cell<Option<Error>> = Cell::new(None);
    let outer = integrate(
        |z| {
            let width = 1.0 - z;
            if width <= 0.0 {
                return 0.0;
            }
            let inner = integrate(
                |x| {
                    let y = width - x;
                    2.0 * z * width / (width * width + t * x * y)
                },
                0.0,
                width,
                inner_opts,
            );
            match inner {
                Ok(q) => q.value,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        },
        0.0,
        1.0,
        outer_opts,
    )?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let scale = alpha / (2.0 * PI);
    Ok(Quadrature {
        value: scale * outer.value,
        error: scale * (outer.error + outer.value.abs() * inner_opts.rel_tol),
        panels: outer.panels,
    })
}

/// a_e = F₂(0) at the physical coupling.
pub fn f2_anomalous_moment() -> Result<Quadrature> {
    f2_form_factor(0.0, ALPHA, 1e-10)
}
