use thiserror::Error;

use crate::covariant::PolarizationLabel;
use crate::quadrature::IntegralResult;

/// Domain errors raised by the physics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("speed {speed} is not below the speed of light")]
    InvalidVelocity { speed: f64 },
    #[error("polarization {sigma} is undefined for a vanishing in-plane wavevector")]
    DegenerateDirection { sigma: PolarizationLabel },
    #[error("closed-form weight exists only for s and p, not {sigma}")]
    NotTransverse { sigma: PolarizationLabel },
    #[error("unknown polarization label `{0}`")]
    UnknownPolarization(String),
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("thermal factor sampled at zero frequency")]
    ZeroFrequencyNode,
    #[error("reflection amplitude {sigma} has a vanishing denominator")]
    FresnelPole { sigma: PolarizationLabel },
}

/// Failure of a force evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForceError {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    /// Quadrature did not reach the requested tolerance. `best` holds the
    /// breakdown obtained anyway.
    #[error("quadrature did not converge for {component}: value {} ± {}", .result.value, .result.error)]
    Accuracy {
        component: &'static str,
        result: IntegralResult,
        best: Box<crate::force::ForceBreakdown>,
    },
}
