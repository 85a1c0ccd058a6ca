use num_complex::Complex64;

use crate::error::PhysicsError;

/// Damped Lorentz oscillator α(ω) = α₀ω₀² / (ω₀² − ω² − iγω).
///
/// Retarded: the poles sit at Im ω = −γ/2, so α is analytic in the upper
/// half-plane and can be evaluated there with [`LorentzOscillator::at`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzOscillator {
    alpha0: f64,
    omega0: f64,
    damping: f64,
}

impl LorentzOscillator {
    pub fn new(alpha0: f64, omega0: f64, damping: f64) -> Result<Self, PhysicsError> {
        if !(alpha0.is_finite() && alpha0 > 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "alpha0",
                value: alpha0,
                reason: "static polarizability must be positive",
            });
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "omega0",
                value: omega0,
                reason: "resonance frequency must be positive",
            });
        }
        if !(damping.is_finite() && damping >= 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "damping",
                value: damping,
                reason: "damping must be non-negative",
            });
        }
        Ok(Self {
            alpha0,
            omega0,
            damping,
        })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    /// α at real frequency.
    pub fn polarizability(&self, omega: f64) -> Complex64 {
        self.at(Complex64::new(omega, 0.0))
    }

    /// α at complex frequency (upper half-plane or real axis).
    pub fn at(&self, omega: Complex64) -> Complex64 {
        let w0sq = self.omega0 * self.omega0;
        let denom = w0sq - omega * omega - Complex64::i() * self.damping * omega;
        self.alpha0 * w0sq / denom
    }
}
