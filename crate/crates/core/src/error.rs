use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("working precision {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),

    #[error("series centers differ")]
    CenterMismatch,

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("argument lies on the branch cut: {0}")]
    BranchCut(String),

    #[error("no admissible stationary point: {0}")]
    NotAdmissible(String),

    #[error("stationarity violated: |V'(x0)| = {0}")]
    NotStationary(String),

    #[error("need at least {required} series coefficients, have {available}")]
    InsufficientCoefficients { required: usize, available: usize },

    #[error("Newton iteration did not converge after {iterations} steps (last step {last_step}); try more precision, another displacement d or a nearer guess")]
    Divergence {
        iterations: usize,
        last_step: String,
        last_iterate: Vec<String>,
    },

    #[error("Newton iterate left the trust region of radius {radius} around the guess after {iterations} steps")]
    OutsideTrustRegion { radius: String, iterations: usize },

    #[error("singular Jacobian at iterate {at:?}; try another (D, d) or a better guess")]
    SingularJacobian { at: Vec<String> },

    #[error("determinant is precision-limited at {bits} bits; escalate precision")]
    PrecisionLimited { bits: u32 },

    #[error("perturbation coefficient {order} has imaginary part {imag} above tolerance")]
    RealityViolated { order: usize, imag: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
