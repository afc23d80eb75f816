use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q-product diverges: |q| = {q} is not below 1")]
    Divergence { q: f64 },
    #[error("budget exceeded in {what}: needed {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: String },
    #[error("joint eigenspace has dimension {dim}, expected 1")]
    Degenerate { dim: usize },
    #[error("inexact Laurent division in {0}")]
    InexactDivision(&'static str),
    #[error("no convergence: {what} after {steps} steps (last delta {delta:e})")]
    NonConvergence {
        what: &'static str,
        steps: usize,
        delta: f64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("integrand is not antisymmetric in the block variables (defect {0:e})")]
    AntisymmetryViolation(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
