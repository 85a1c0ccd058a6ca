//! Bose-Einstein occupations and the symmetrized thermal factor
//! coth(ω/2T). Temperatures are frequencies, k_B T/ħ.

use crate::error::PhysicsError;

/// Below this |ω/2T| the hyperbolic cotangent switches to its Laurent series.
pub const LAURENT_THRESHOLD: f64 = 1e-4;

/// Equilibrium temperature together with the velocity of the frame in
/// which it is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    temperature: f64,
    frame_velocity: [f64; 3],
}

impl ThermalState {
    pub fn new(temperature: f64, frame_velocity: [f64; 3]) -> Result<Self, PhysicsError> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "temperature",
                value: temperature,
                reason: "temperature must be finite and non-negative",
            });
        }
        let v2: f64 = frame_velocity.iter().map(|c| c * c).sum();
        if v2 >= 1.0 {
            return Err(PhysicsError::InvalidVelocity { speed: v2.sqrt() });
        }
        Ok(Self {
            temperature,
            frame_velocity,
        })
    }

    pub fn at_rest(temperature: f64) -> Result<Self, PhysicsError> {
        Self::new(temperature, [0.0; 3])
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn frame_velocity(&self) -> [f64; 3] {
        self.frame_velocity
    }
}

/// Bose-Einstein occupation N(ω, T) = 1/(e^{ω/T} − 1).
pub fn occupation(omega: f64, temperature: f64) -> Result<f64, PhysicsError> {
    if temperature == 0.0 {
        return Ok(if omega > 0.0 { 0.0 } else if omega < 0.0 { -1.0 } else { f64::NAN });
    }
    if omega == 0.0 {
        return Err(PhysicsError::ZeroFrequencyNode);
    }
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// coth(ω/2T), with sgn ω at T = 0.
pub fn coth_half(omega: f64, temperature: f64) -> Result<f64, PhysicsError> {
    if omega == 0.0 {
        return Err(PhysicsError::ZeroFrequencyNode);
    }
    if temperature == 0.0 {
        return Ok(omega.signum());
    }
    let y = omega / (2.0 * temperature);
    if y.abs() < LAURENT_THRESHOLD {
        let y2 = y * y;
        return Ok(1.0 / y + y / 3.0 - y * y2 / 45.0);
    }
    Ok(omega.signum() * (1.0 + 2.0 / (2.0 * y.abs()).exp_m1()))
}

/// Thermal part of coth(ω/2T) with the zero-point sign removed:
/// coth(ω/2T) − sgn ω = 2 sgn(ω) N(|ω|, T).
pub fn thermal_excess(omega: f64, temperature: f64) -> Result<f64, PhysicsError> {
    if omega == 0.0 {
        return Err(PhysicsError::ZeroFrequencyNode);
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let y = omega.abs() / (2.0 * temperature);
    if y < LAURENT_THRESHOLD {
        return Ok(coth_half(omega, temperature)? - omega.signum());
    }
    Ok(omega.signum() * 2.0 / (2.0 * y).exp_m1())
}

/// coth(ω′/2T_A) − coth(ω/2T_F) = 2N(ω′, T_A) − 2N(ω, T_F).
pub fn occupation_difference(
    omega_comoving: f64,
    temp_particle: f64,
    omega: f64,
    temp_field: f64,
) -> Result<f64, PhysicsError> {
    if omega_comoving == 0.0 || omega == 0.0 {
        return Err(PhysicsError::ZeroFrequencyNode);
    }
    if omega_comoving == omega && temp_particle == temp_field {
        return Ok(0.0);
    }
    Ok(coth_half(omega_comoving, temp_particle)? - coth_half(omega, temp_field)?)
}
