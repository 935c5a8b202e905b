use thiserror::Error;

/// Errors shared across the symbolic and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {modes} modes")]
    VertexOutOfRange { vertex: usize, modes: usize },

    #[error("edge vertex set must be nonempty (use the constant field for a global phase)")]
    EmptyEdge,

    #[error("repeated vertex {0} in edge key; edge keys are sets")]
    RepeatedVertex(usize),

    #[error("mode {0} is detached (already measured)")]
    DetachedMode(usize),

    #[error("mode {0} carries a pending non-diagonal byproduct; reduce it first")]
    PendingByproduct(usize),

    #[error("vertex {0} measured twice in one script")]
    AlreadyMeasured(usize),

    #[error("squeeze parameter must be positive, got {0}")]
    SqueezeDomain(f64),

    #[error("weight-to-squeeze needs a strictly positive edge weight, got {0}")]
    NonPositiveWeight(f64),

    #[error("edge {0:?} not present in the phase polynomial")]
    MissingEdge(Vec<usize>),

    #[error("degenerate momentum projection on vertex {vertex}: {reason}")]
    DegenerateProjection { vertex: usize, reason: String },

    #[error("measured mode {0} appears nonlinearly in the phase polynomial")]
    NonlinearMeasurement(usize),

    #[error("cell structure mismatch: {0}")]
    CellMismatch(String),

    #[error("teleportation is degenerate for corner outcome t = 0")]
    TeleportDegenerate,

    #[error("gamma must be strictly positive, got {0}")]
    NonPositiveGamma(f64),

    #[error("missing measurement outcome for center vertex {0}")]
    MissingOutcome(usize),

    #[error("integral did not reduce: {0}")]
    Irreducible(String),

    #[error("grid points must be a power of two >= 8, got {0}")]
    BadGridPoints(usize),

    #[error("grid supports at most 5 modes, got {0}")]
    TooManyModes(usize),

    #[error("grid of {points} points x {modes} modes exceeds the memory cap")]
    MemoryCap { points: usize, modes: usize },

    #[error("grid half-extent must be positive, got {0}")]
    BadExtent(f64),

    #[error("grid too small for squeezing r = {r}: sigma_q = {sigma:.3} exceeds half-extent {half_extent}")]
    GridTooSmall { r: f64, sigma: f64, half_extent: f64 },

    #[error("operation requires a self-dual grid (dx == dp); use GridSpec::self_dual")]
    NotSelfDual,

    #[error("wavefunction grids differ")]
    GridMismatch,

    #[error("cannot project away the only remaining mode")]
    CannotProjectLastMode,

    #[error("state has {state} live modes but the grid has {grid}")]
    ModeCountMismatch { state: usize, grid: usize },

    #[error("value {value} outside grid range [{min}, {max}]")]
    ValueOutOfRange { value: f64, min: f64, max: f64 },

    #[error("external input '{0}' has no bound wavepacket")]
    UnboundExternal(String),

    #[error("quadrature under-resolved: doubling the step count changed the result by {delta:.3e}")]
    QuadratureUnderResolved { delta: f64 },

    #[error("zero-norm wavefunction")]
    ZeroNorm,

    #[error("malformed graph document: {0}")]
    Parse(String),

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
