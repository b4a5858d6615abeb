use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("momentum is superluminal: p·p = {dot} > 0")]
    SuperluminalMomentum { dot: f64 },
    #[error("energy component p⁰ is zero")]
    ZeroEnergy,
    #[error("state is massless; spinor normalization is singular at m_p = 0")]
    MasslessState,
    #[error("spin vector is not unit spacelike: s·s = {dot}")]
    NonUnitSpin { dot: f64 },
    #[error("spatial momentum is zero; helicity axis undefined")]
    ZeroMomentum,
    #[error("box edges differ: {left} vs {right}")]
    BoxMismatch { left: f64, right: f64 },
    #[error("τ' = τ: the influence kernel is undefined on the diagonal")]
    DegenerateInterval,
    #[error("intermediate parameter {mid} lies outside [{start}, {end}]")]
    OrderingViolation { start: f64, mid: f64, end: f64 },
    #[error("state lies outside S₊ (Møller operators annihilate S₋)")]
    SubspaceViolation,
    #[error("no lattice node conserves the incident mass")]
    UnresolvedDelta,
    #[error("forward scattering pole: |Δp| = 0 with unscreened Coulomb potential")]
    ForwardSingular,
    #[error("two-particle state vanishes identically")]
    NullState,
    #[error("spectral grids are incompatible: {0}")]
    GridIncompatible(String),
    #[error("propagator pole on the grid at m = {mass}")]
    PoleOnGrid { mass: f64 },
    #[error("momentum k is on the light cone: k·k = {dot}")]
    OnLightCone { dot: f64 },
    #[error("momentum r is on the mass shell: m̄² + r·r = {value}")]
    OnMassShell { value: f64 },
    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(f64),
    #[error("unsupported hydrogenic state n={n}, l={l}")]
    UnsupportedState { n: u32, l: u32 },
    #[error("quadrature did not converge: estimated error {error:e} after {panels} panels")]
    QuadratureNonconvergence { error: f64, panels: usize },
    #[error("mode mass {found} differs from the required sharp mass {expected}")]
    MassMismatch { expected: f64, found: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed state document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
