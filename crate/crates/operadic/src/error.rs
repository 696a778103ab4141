//! Error type shared across the crate.

use crate::lax::Trajectory;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDim,

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("coefficient tensor for dim {dim}, degree {degree} is too large to allocate")]
    TensorTooLarge { dim: usize, degree: usize },

    #[error("got {got} coefficients, expected {expected}")]
    CoefficientCount { got: usize, expected: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("degree-{degree} operation applied to {supplied} arguments")]
    ArityMismatch { degree: usize, supplied: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("composition slot {slot} exceeds reduced degree {reduced}")]
    SlotOutOfRange { slot: usize, reduced: usize },

    #[error("expected an operation of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("operation must have dimension {expected}, got {got}")]
    WrongDim { expected: usize, got: usize },

    #[error("matrix power exponent must be at least 1")]
    ZeroPower,

    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("state became non-finite at t = {t} in {stage}")]
    NonFiniteState { t: f64, stage: &'static str },

    #[error("state exceeded the blow-up limit at step {step} (t = {t})")]
    BlowUp {
        step: usize,
        t: f64,
        /// Points recorded before the failing step.
        trajectory: Box<Trajectory>,
    },

    #[error("frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),

    #[error("radicand {0} is negative beyond rounding tolerance")]
    NegativeRadicand(f64),

    #[error("structure constants are not anti-commutative (symmetric part {residual})")]
    NotAntiCommutative { residual: f64 },

    #[error("Cramer reconstruction is degenerate at q = 0")]
    DegenerateCramer,
}
