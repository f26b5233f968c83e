use thiserror::Error;

/// Everything that can go wrong while building pulses, propagating them or
/// analysing sweeps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integration failed: unitarity defect {defect:e} exceeds tolerance {tolerance:e}")]
    IntegrationFailure { defect: f64, tolerance: f64 },

    #[error("matrix is not of SU(2) form: {0}")]
    NotSu2(String),

    #[error("Cayley-Klein pair not normalized: |a|^2 + |b|^2 = {0}")]
    NotNormalized(f64),

    #[error("pulse family mismatch: {0}")]
    WrongFamily(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invariant-based pulse is singular for n = {0}")]
    SingularSta(f64),

    #[error("degenerate profile: {0}")]
    Degenerate(String),

    #[error("sweep failed at error value {value}: {source}")]
    SweepPoint {
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
