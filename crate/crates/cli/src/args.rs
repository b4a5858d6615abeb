use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paradirac::verify::Suite;

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "paradirac",
    version,
    about = "Parametrized Dirac numerics: identity checks and physics tables"
)]
pub struct RunConfig {
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seeded identity suites and report max residuals.
    Verify(VerifyArgs),
    /// Electron-nucleus cross-section table against the Rutherford baseline.
    Mott(MottArgs),
    /// Vacuum-polarization level shift of a hydrogenic state.
    Uehling(UehlingArgs),
    /// One-loop anomalous magnetic moment.
    G2(G2Args),
    /// Axial anomaly source term for constant fields.
    Anomaly(AnomalyArgs),
    /// Free evolution of a spectral state read from JSON.
    PropagateDemo(PropagateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replace every per-check tolerance.
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MottArgs {
    /// Incident momentum |p| in MeV (defaults to the electron mass).
    #[arg(long = "p", value_parser = positive)]
    pub p_mag: Option<f64>,
    #[arg(long = "Z", alias = "z", default_value_t = 1.0, value_parser = positive)]
    pub z: f64,
    /// Angles in degrees: `start:stop:count` (inclusive) or a comma list.
    #[arg(long, default_value = "18:180:10")]
    pub angles: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyUnit {
    Mhz,
    Mev,
}

#[derive(Debug, Args)]
pub struct UehlingArgs {
    #[arg(long = "Z", alias = "z", default_value_t = 1.0, value_parser = positive)]
    pub z: f64,
    /// Hydrogenic state label such as 1s, 2s or 2p.
    #[arg(long, default_value = "2s")]
    pub state: String,
    #[arg(long, value_enum, default_value = "mhz")]
    pub units: EnergyUnit,
}

#[derive(Debug, Args)]
pub struct G2Args {
    /// Fine-structure constant (defaults to the physical value).
    #[arg(long, value_parser = positive)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct AnomalyArgs {
    /// Electric field as `x,y,z`.
    #[arg(long = "E", alias = "e-field", value_parser = vector3, allow_hyphen_values = true)]
    pub e: [f64; 3],
    /// Magnetic field as `x,y,z`.
    #[arg(long = "B", alias = "b-field", value_parser = vector3, allow_hyphen_values = true)]
    pub b: [f64; 3],
    /// Coupling (defaults to the unit charge).
    #[arg(long, value_parser = positive)]
    pub charge: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Forward,
    Backward,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    /// State document; a built-in four-mode state is used when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tau: f64,
    #[arg(long = "tau-prime", default_value_t = 1.0, allow_hyphen_values = true)]
    pub tau_prime: f64,
    #[arg(long, value_enum, default_value = "forward")]
    pub which: Which,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn vector3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, z] if parts.iter().all(|v| v.is_finite()) => Ok([*x, *y, *z]),
        _ => Err(format!("expected three finite components, got {s}")),
    }
}

/// Angle grid in degrees.
pub fn parse_angles(grid: &str) -> Result<Vec<f64>, String> {
    let values = if let Some((start, rest)) = grid.split_once(':') {
        let (stop, count) = rest
            .split_once(':')
            .ok_or("range form is start:stop:count")?;
        let start: f64 = start.trim().parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = stop.trim().parse().map_err(|e| format!("stop: {e}"))?;
        let count: usize = count.trim().parse().map_err(|e| format!("count: {e}"))?;
        match count {
            0 => return Err("count must be at least 1".into()),
            1 => vec![start],
            n => (0..n)
                .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    } else {
        grid.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if let Some(bad) = values
        .iter()
        .find(|v| !(v.is_finite() && **v >= 0.0 && **v <= 180.0))
    {
        return Err(format!("angle {bad} outside [0, 180] degrees"));
    }
    Ok(values)
}

/// (n, l) from a label like `2s`.
pub fn parse_state(label: &str) -> Result<(u32, u32), String> {
    let label = label.trim().to_ascii_lowercase();
    let split = label
        .find(|c: char| !c.is_ascii_digit())
        .ok_or_else(|| format!("bad state label {label}"))?;
    let n: u32 = label[..split]
        .parse()
        .map_err(|_| format!("bad state label {label}"))?;
    let l = match &label[split..] {
        "s" => 0,
        "p" => 1,
        "d" => 2,
        "f" => 3,
        _ => return Err(format!("bad state label {label}")),
    };
    Ok((n, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_grids() {
        assert_eq!(
            parse_angles("10:100:4").unwrap(),
            vec![10.0, 40.0, 70.0, 100.0]
        );
        assert_eq!(parse_angles("30, 60").unwrap(), vec![30.0, 60.0]);
        assert!(parse_angles("0:180:0").is_err());
        assert!(parse_angles("200").is_err());
    }

    #[test]
    fn state_labels() {
        assert_eq!(parse_state("2S").unwrap(), (2, 0));
        assert_eq!(parse_state("3d").unwrap(), (3, 2));
        assert!(parse_state("x").is_err());
    }

    #[test]
    fn field_vectors() {
        assert_eq!(vector3("0, -1,2.5").unwrap(), [0.0, -1.0, 2.5]);
        assert!(vector3("1,2").is_err());
    }
}
