//! Deterministic inputs shared by the benchmarks in `benches/`.

use paradirac::states::ModeRecord;
use paradirac::{FourVector, SpectralState};

/// `n` electron-mass modes on a spiral of momenta, alternating branch and energy sign.
pub fn spiral_state(n: usize) -> SpectralState {
    let modes = (0..n).map(|i| {
        let t = i as f64 / n.max(1) as f64;
        let angle = 7.0 * t * std::f64::consts::TAU;
        let spatial = [0.8 * t * angle.cos(), 0.8 * t * angle.sin(), 0.6 - 1.2 * t];
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let record = ModeRecord {
            p: FourVector::on_shell(paradirac::constants::ELECTRON_MASS, spatial, sign).0,
            branch: if (i / 2) % 2 == 0 { 1 } else { -1 },
            a: [[1.0 - t, 0.5 * t], [0.25, -t]],
            box_edge: 1.0,
        };
        record.to_mode().expect("massive momentum")
    });
    SpectralState::from_modes(1.0, modes)
}
