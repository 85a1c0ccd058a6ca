//! Conversion between SI inputs and the natural units of the integrators.
//!
//! Natural units set ħ = c = ε₀ = 1 and measure frequency in units of the
//! particle resonance ω₀. Lengths are then in c/ω₀, temperatures in ħω₀/k_B,
//! forces in ħω₀²/c and power in ħω₀².

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::config::{ParticleParams, RunConfig};

/// Planck constant h in J s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant ħ = h/2π in J s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Speed of light in m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant in J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity in F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_8128e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    Natural,
    Si,
}

impl UnitSystem {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "SI",
        }
    }

    pub fn speed_of_light(&self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => SPEED_OF_LIGHT,
        }
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UnitSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "natural" => Ok(UnitSystem::Natural),
            "SI" | "si" => Ok(UnitSystem::Si),
            other => Err(format!("`{other}` is not one of natural, SI")),
        }
    }
}

/// Scale factors from natural to configured units, fixed by ω₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    pub frequency: f64,
    pub velocity: f64,
    pub length: f64,
    pub temperature: f64,
    pub polarizability: f64,
    pub force: f64,
    pub power: f64,
}

impl Scales {
    pub fn new(units: UnitSystem, omega0: f64) -> Self {
        match units {
            UnitSystem::Natural => Self {
                frequency: 1.0,
                velocity: 1.0,
                length: 1.0,
                temperature: 1.0,
                polarizability: 1.0,
                force: 1.0,
                power: 1.0,
            },
            UnitSystem::Si => {
                let length = SPEED_OF_LIGHT / omega0;
                Self {
                    frequency: omega0,
                    velocity: SPEED_OF_LIGHT,
                    length,
                    temperature: HBAR * omega0 / BOLTZMANN,
                    polarizability: VACUUM_PERMITTIVITY * length.powi(3),
                    force: HBAR * omega0 * omega0 / SPEED_OF_LIGHT,
                    power: HBAR * omega0 * omega0,
                }
            }
        }
    }

    pub fn for_config(config: &RunConfig) -> Self {
        Self::new(config.units, config.particle.omega0)
    }

    pub fn particle_to_natural(&self, p: &ParticleParams) -> ParticleParams {
        ParticleParams {
            alpha0: p.alpha0 / self.polarizability,
            omega0: p.omega0 / self.frequency,
            damping: p.damping / self.frequency,
        }
    }

    pub fn particle_from_natural(&self, p: &ParticleParams) -> ParticleParams {
        ParticleParams {
            alpha0: p.alpha0 * self.polarizability,
            omega0: p.omega0 * self.frequency,
            damping: p.damping * self.frequency,
        }
    }
}
