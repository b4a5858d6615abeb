use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use paradirac::constants::{mev_to_mhz, unit_charge, ALPHA, DEFAULT_BOX_EDGE, ELECTRON_MASS};
use paradirac::propagate::{free_evolve, surviving_subspace};
use paradirac::radiative::{
    anomaly_density, f2_form_factor, uehling_shift, FieldTensor, ResultRecord,
};
use paradirac::scattering::{momentum_ratio_mott_factor, mott_dcs, rutherford_dcs};
use paradirac::states::ModeRecord;
use paradirac::verify::{run_suite, CheckResult, VerifyOptions};
use paradirac::{Branch, FourVector, SpectralState, Subspace};

use crate::args::{
    parse_angles, parse_state, AnomalyArgs, EnergyUnit, Format, G2Args, MottArgs, PropagateArgs,
    UehlingArgs, VerifyArgs, Which,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Physics(#[from] paradirac::Error),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use paradirac::Error as E;
        match self {
            CliError::Invalid(_) => 2,
            CliError::Physics(
                E::UnsupportedState { .. }
                | E::ForwardSingular
                | E::InvalidArgument(_)
                | E::Format(_)
                | E::DegenerateInterval
                | E::BoxMismatch { .. },
            ) => 2,
            _ => 1,
        }
    }
}

/// Text produced by a command plus whether it should count as a failure.
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            failure: None,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: String,
    name: &'a str,
    max_residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: String,
    seed: u64,
    tolerance_override: Option<f64>,
    passed: bool,
    checks: Vec<CheckRow<'a>>,
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions {
        seed: args.seed,
        tolerance: args.tol,
        ..Default::default()
    };
    let results: Vec<CheckResult> = run_suite(args.suite, &opts);
    let failed = results.iter().filter(|r| !r.passed()).count();
    let text = match args.format {
        Format::Json => json(&VerifyReport {
            suite: args.suite.to_string(),
            seed: args.seed,
            tolerance_override: args.tol,
            passed: failed == 0,
            checks: results
                .iter()
                .map(|r| CheckRow {
                    suite: r.suite.to_string(),
                    name: &r.name,
                    max_residual: r.residual,
                    tolerance: r.tolerance,
                    passed: r.passed(),
                })
                .collect(),
        }),
        Format::Text | Format::Csv => {
            let mut s = format!("suite={} seed={}\n", args.suite, args.seed);
            for r in &results {
                writeln!(s, "{r}").expect("string write");
            }
            writeln!(s, "{} checks, {} failed", results.len(), failed).expect("string write");
            s
        }
    };
    let failure = (failed > 0).then_some(CliError::ChecksFailed {
        failed,
        total: results.len(),
    });
    Outcome { text, failure }
}

#[derive(Serialize)]
struct MottRow {
    kappa_deg: f64,
    dcs: f64,
    ratio_to_rutherford: f64,
    momentum_ratio_factor: f64,
}

#[derive(Serialize)]
struct MottUnits {
    kappa_deg: &'static str,
    dcs: &'static str,
    ratio_to_rutherford: &'static str,
    momentum_ratio_factor: &'static str,
    p_mag: &'static str,
}

#[derive(Serialize)]
struct MottTable {
    quantity: &'static str,
    p_mag: f64,
    z: f64,
    units: MottUnits,
    rows: Vec<MottRow>,
}

pub fn mott(args: &MottArgs) -> Result<Outcome, CliError> {
    let angles = parse_angles(&args.angles).map_err(CliError::Invalid)?;
    let p = args.p_mag.unwrap_or(ELECTRON_MASS);
    let mut rows = Vec::with_capacity(angles.len());
    for deg in angles {
        let kappa = deg.to_radians();
        let dcs = mott_dcs(p, kappa, args.z)?;
        let ratio = dcs / rutherford_dcs(p, kappa, args.z)?;
        rows.push(MottRow {
            kappa_deg: deg,
            dcs,
            ratio_to_rutherford: ratio,
            momentum_ratio_factor: momentum_ratio_mott_factor(p, kappa),
        });
    }
    let text = match args.format {
        Format::Json => json(&MottTable {
            quantity: "mott_cross_section",
            p_mag: p,
            z: args.z,
            units: MottUnits {
                kappa_deg: "deg",
                dcs: "MeV^-2 sr^-1",
                ratio_to_rutherford: "1",
                momentum_ratio_factor: "1",
                p_mag: "MeV",
            },
            rows,
        }),
        Format::Csv | Format::Text => {
            let mut s = String::from("kappa_deg,dcs,ratio_to_rutherford\n");
            for r in &rows {
                writeln!(s, "{},{:e},{}", r.kappa_deg, r.dcs, r.ratio_to_rutherford)
                    .expect("string write");
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn uehling(args: &UehlingArgs) -> Result<Outcome, CliError> {
    let (n, l) = parse_state(&args.state).map_err(CliError::Invalid)?;
    let shift = uehling_shift(n, l, args.z)?;
    let (value, err, units) = match args.units {
        EnergyUnit::Mhz => (shift.mhz, mev_to_mhz(shift.est_error_mev), "MHz"),
        EnergyUnit::Mev => (shift.mev, shift.est_error_mev, "MeV"),
    };
    Ok(Outcome::ok(json(&ResultRecord {
        quantity: format!("uehling_shift_{}", args.state.trim().to_ascii_lowercase()),
        value,
        units: units.into(),
        est_error: err,
        quadrature_panels: shift.panels,
    })))
}

pub fn g2(args: &G2Args) -> Result<Outcome, CliError> {
    let q = f2_form_factor(0.0, args.alpha.unwrap_or(ALPHA), args.tol)?;
    Ok(Outcome::ok(json(&ResultRecord {
        quantity: "a_e".into(),
        value: q.value,
        units: "1".into(),
        est_error: q.error,
        quadrature_panels: q.panels,
    })))
}

pub fn anomaly(args: &AnomalyArgs) -> Outcome {
    let field = FieldTensor::from_fields(args.e, args.b);
    // adding +0.0 turns a signed zero into +0.0
    let value = anomaly_density(&field, args.charge.unwrap_or_else(unit_charge)) + 0.0;
    Outcome::ok(json(&ResultRecord {
        quantity: "axial_anomaly_density".into(),
        value,
        units: "MeV^4".into(),
        est_error: 0.0,
        quadrature_panels: 0,
    }))
}

#[derive(Serialize)]
struct PropagateReport {
    which: &'static str,
    tau: f64,
    tau_prime: f64,
    surviving_subspace: &'static str,
    sign: f64,
    input: Vec<ModeRecord>,
    output: Vec<ModeRecord>,
}

/// One mode of each (branch, energy sign) pair at the electron mass.
pub fn demo_state() -> SpectralState {
    let spatial = [
        [0.1, 0.0, 0.3],
        [0.0, -0.2, 0.1],
        [0.25, 0.1, 0.0],
        [-0.1, 0.2, -0.2],
    ];
    let cases = [
        (Branch::Forward, 1.0),
        (Branch::Forward, -1.0),
        (Branch::Backward, 1.0),
        (Branch::Backward, -1.0),
    ];
    let modes = spatial
        .iter()
        .zip(cases)
        .enumerate()
        .map(|(i, (s, (branch, sign)))| {
            let record = ModeRecord {
                p: FourVector::on_shell(ELECTRON_MASS, *s, sign).0,
                branch: branch.sign() as i32,
                a: [[1.0, 0.0], [0.0, 0.25 * i as f64]],
                box_edge: DEFAULT_BOX_EDGE,
            };
            record.to_mode().expect("massive momentum")
        });
    SpectralState::from_modes(DEFAULT_BOX_EDGE, modes)
}

pub fn propagate_demo(args: &PropagateArgs) -> Result<Outcome, CliError> {
    let state = match &args.input {
        Some(path) => SpectralState::from_json(&std::fs::read_to_string(path)?)?,
        None => demo_state(),
    };
    let which = match args.which {
        Which::Forward => Branch::Forward,
        Which::Backward => Branch::Backward,
    };
    let out = free_evolve(&state, args.tau, args.tau_prime, which)?;
    let (subspace, sign) = surviving_subspace(which, args.tau_prime - args.tau)?;
    Ok(Outcome::ok(json(&PropagateReport {
        which: match args.which {
            Which::Forward => "forward",
            Which::Backward => "backward",
        },
        tau: args.tau,
        tau_prime: args.tau_prime,
        surviving_subspace: match subspace {
            Subspace::Plus => "plus",
            Subspace::Minus => "minus",
        },
        sign,
        input: state.records(),
        output: out.records(),
    })))
}
