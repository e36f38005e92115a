use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExciteError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("coordinate {x} lies outside the support [0, {edge}]")]
    OutOfDomain { x: f64, edge: f64 },

    #[error("panel indices {a}..{b} invalid for a grid of {n} points")]
    PanelIndex { a: usize, b: usize, n: usize },

    #[error("no sign change of the shooting mismatch in [{lo}, {hi}]")]
    NoEigenvalue { lo: f64, hi: f64 },

    #[error("ground state candidate at E = {energy} has a node near x = {x}")]
    WrongParity { energy: f64, x: f64 },

    #[error("unnormalized profile vanishes at the anchor x0 = {x0}")]
    DegenerateAnchor { x0: f64 },

    #[error("non-finite intermediate in {stage} at x = {x}")]
    Overflow { stage: &'static str, x: f64 },

    #[error("tail does not decay at x_max = {x_max} (S' = {s_prime})")]
    NonDecayingTail { x_max: f64, s_prime: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed artifact: {0}")]
    Malformed(String),
}

impl ExciteError {
    /// True for errors caused by the caller's configuration rather than the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            ExciteError::InvalidParameter(_)
                | ExciteError::InvalidGrid(_)
                | ExciteError::OutOfDomain { .. }
                | ExciteError::PanelIndex { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, ExciteError>;
