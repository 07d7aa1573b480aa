use thiserror::Error;

/// Errors produced by the model, thermal and analysis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// The closed-form eigenvector components have a vanishing denominator
    /// `1 - E_j^2`. The dense diagonalization fallback
    /// ([`crate::spinmodel::spectrum_dense`]) handles these inputs.
    #[error("closed-form eigenvectors singular for state {state}: |1 - E^2| = {defect:.3e}")]
    SingularEigenvector { state: usize, defect: f64 },

    #[error("temperature must be positive, got {0}")]
    NonpositiveTemperature(f64),

    #[error("path-ordered integration needs at least 16 steps, got {0}")]
    StepCountTooSmall(usize),

    #[error("curve endpoints differ by {0:.3e}; winding needs a closed curve")]
    CurveNotClosed(f64),

    #[error("curve passes within {0:.3e} of the origin; winding is undefined")]
    OriginOnCurve(f64),

    #[error("no transition found in the swept range")]
    NoTransitionFound,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}
