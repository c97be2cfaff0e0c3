use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} lies beyond the explicit window of length {len}")]
    WindowExceeded { index: usize, len: usize },

    #[error("a·λ_{index} = {target} exceeds the largest materializable frequency")]
    SearchWindowExceeded { index: usize, target: f64 },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("summability at r = L = {0} is undetermined")]
    Undetermined(f64),

    #[error("elements belong to different spaces")]
    MismatchedSpace,

    #[error("point with real part {re} is outside the half-plane Re z > {theta}")]
    OutsideDomain { re: f64, theta: f64 },

    #[error("kernel tail could not be certified: {0}")]
    TailNotCertifiable(String),

    #[error("element is zero")]
    ZeroElement,

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("no index m with λ_m = a·λ_{0}")]
    RatioIndexMissing(usize),

    #[error("composition operator is unbounded: {0}")]
    UnboundedSymbol(String),

    #[error("window is not conclusive for {0}")]
    WindowNotConclusive(String),

    #[error("Schatten membership undetermined at the critical abscissa {0}")]
    SchattenUndetermined(f64),

    #[error("frequency sequence does not have one zero and one non-zero initial point: {0}")]
    WrongInitialPointCensus(String),

    #[error("divergence of Σ ω_j^-2 is not evidenced (partial sum {0})")]
    DivergenceNotEvidenced(f64),

    #[error("no degree up to {cap} reaches residual {target}")]
    DegreeCapExceeded { cap: usize, target: f64 },

    #[error("Jacobi SVD did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
