//! Drag and heating of a particle moving through isotropic blackbody
//! radiation.
//!
//! The force is written as an integral over photon frequency ω > 0 (the
//! negative-frequency half is folded in) and the cosine `c` of the angle
//! between photon direction and velocity. The azimuth is integrated
//! analytically.

use std::f64::consts::PI;

use crate::covariant::lorentz_gamma;
use crate::error::{ForceError, PhysicsError};
use crate::force::{component, ForceBreakdown, ForceComponent};
use crate::materials::{thermal_excess, LorentzOscillator};
use crate::quadrature::{integrate_nested, integrate_vec, QuadratureSpec};

/// Thermal factors below e^{-CUTOFF_EXPONENT} relative to their peak are
/// dropped; the polynomial prefactor grows at most like ω⁵.
const CUTOFF_EXPONENT: f64 = 60.0;

/// A particle with speed `velocity` along x through radiation at
/// `temp_field`, with internal temperature `temp_particle` in its rest frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackbodyScenario {
    pub particle: LorentzOscillator,
    pub velocity: f64,
    pub temp_particle: f64,
    pub temp_field: f64,
}

impl BlackbodyScenario {
    pub fn new(
        particle: LorentzOscillator,
        velocity: f64,
        temp_particle: f64,
        temp_field: f64,
    ) -> Result<Self, PhysicsError> {
        if !(velocity.is_finite() && velocity.abs() < 1.0) {
            return Err(PhysicsError::InvalidVelocity {
                speed: velocity.abs(),
            });
        }
        for (name, t) in [("T_A", temp_particle), ("T_F", temp_field)] {
            if !(t.is_finite() && t >= 0.0) {
                return Err(PhysicsError::InvalidParameter {
                    name,
                    value: t,
                    reason: "temperature must be finite and non-negative",
                });
            }
        }
        Ok(Self {
            particle,
            velocity,
            temp_particle,
            temp_field,
        })
    }

    pub fn gamma(&self) -> f64 {
        lorentz_gamma(self.velocity * self.velocity)
    }

    /// Upper frequency limit beyond which both thermal factors are
    /// negligible. Zero when both temperatures vanish.
    pub fn frequency_cutoff(&self) -> f64 {
        let doppler = self.gamma() * (1.0 + self.velocity.abs());
        CUTOFF_EXPONENT * self.temp_field.max(self.temp_particle * doppler)
    }
}

/// Folded integrand at (ω, c), split into the field-fluctuation and
/// dipole-fluctuation pieces of F_x and F_0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlackbodyDensity {
    pub friction_field: f64,
    pub friction_dipole: f64,
    pub power_field: f64,
    pub power_dipole: f64,
}

impl BlackbodyDensity {
    pub fn friction(&self) -> f64 {
        self.friction_field + self.friction_dipole
    }

    pub fn power(&self) -> f64 {
        self.power_field + self.power_dipole
    }

    fn to_array(self) -> [f64; 4] {
        [
            self.friction_field,
            self.friction_dipole,
            self.power_field,
            self.power_dipole,
        ]
    }
}

/// Integrand of the blackbody force per unit dω dc, for ω > 0 and
/// c ∈ [−1, 1]. The field piece carries the thermal excess 2N(ω, T_F); the
/// dipole piece carries −2N(u·k, T_A).
pub fn blackbody_integrand(
    scenario: &BlackbodyScenario,
    omega: f64,
    cos_theta: f64,
) -> Result<BlackbodyDensity, PhysicsError> {
    if !(omega > 0.0) {
        return Err(PhysicsError::ZeroFrequencyNode);
    }
    let gamma = scenario.gamma();
    let kx = omega * cos_theta;
    let uk = gamma * (omega - scenario.velocity * kx);
    let im_alpha = scenario.particle.polarizability(uk).im;
    let common = omega * uk * uk * im_alpha / (4.0 * PI * PI * gamma);
    let field = thermal_excess(omega, scenario.temp_field)?;
    let dipole = -thermal_excess(uk, scenario.temp_particle)?;
    Ok(BlackbodyDensity {
        friction_field: common * kx * field,
        friction_dipole: common * kx * dipole,
        power_field: common * omega * field,
        power_dipole: common * omega * dipole,
    })
}

/// Force and power on the particle. F_x < 0 is drag; F_0 is the rate of
/// energy transfer to the particle.
pub fn blackbody_force(
    scenario: &BlackbodyScenario,
    spec: &QuadratureSpec,
) -> Result<ForceBreakdown, ForceError> {
    let lambda = scenario.frequency_cutoff();
    if lambda == 0.0 {
        return Ok(ForceBreakdown {
            friction: ForceComponent::zero(),
            normal: None,
            power: Some(ForceComponent::zero()),
            evaluations: 0,
        });
    }
    let gamma = scenario.gamma();
    let v = scenario.velocity;
    let omega0 = scenario.particle.omega0();
    let t_eff = lambda / CUTOFF_EXPONENT;
    let inner_spec = spec.inner(0.1);
    let mut inner_evals = 0;
    let mut failure = None;

    // Directions c and −c are paired so that the forward-backward
    // asymmetry of F_x is formed pointwise.
    let outer = |c: f64| -> [f64; 12] {
        let hints = [
            omega0 / (gamma * (1.0 - v * c)),
            omega0 / (gamma * (1.0 + v * c)),
            t_eff,
            5.0 * t_eff,
            20.0 * t_eff,
        ];
        let ispec = inner_spec.clone().with_breakpoints(hints);
        let mut density = |w: f64, c: f64| match blackbody_integrand(scenario, w, c) {
            Ok(d) => d.to_array(),
            Err(e) => {
                failure.get_or_insert(e);
                [0.0; 4]
            }
        };
        let r = integrate_vec::<4, _>(
            |w| {
                let a = density(w, c);
                let b = density(w, -c);
                std::array::from_fn(|i| a[i] + b[i])
            },
            0.0,
            lambda,
            &ispec,
            4,
        );
        inner_evals += r.evaluations;
        r.columns()
    };
    let mut r = integrate_nested::<4, 12, _>(outer, 0.0, 1.0, spec);
    if let Some(e) = failure {
        return Err(e.into());
    }
    r.evaluations += inner_evals;
    let part = |i| component(&r, i, spec);
    ForceBreakdown {
        friction: ForceComponent {
            field: part(0),
            dipole: part(1),
        },
        normal: None,
        power: Some(ForceComponent {
            field: part(2),
            dipole: part(3),
        }),
        evaluations: r.evaluations,
    }
    .check()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn particle() -> LorentzOscillator {
        LorentzOscillator::new(1.0, 1.0, 0.1).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-8, 1e-300, 400).unwrap()
    }

    // Term-by-term evaluation from the four-vector form.
    fn reference(s: &BlackbodyScenario, omega: f64, c: f64) -> (f64, f64) {
        use crate::covariant::{four_velocity, FourVector};
        let u = four_velocity([s.velocity, 0.0, 0.0]).unwrap();
        let sin = (1.0 - c * c).sqrt();
        let k = FourVector::new(omega, omega * c, omega * sin, 0.0);
        let uk = u.dot(&k);
        let coth = |x: f64, t: f64| if t == 0.0 { x.signum() } else { 1.0 / (x / (2.0 * t)).tanh() };
        let diff = coth(omega, s.temp_field) - coth(uk, s.temp_particle);
        let w = omega * uk.powi(2) * s.particle.polarizability(uk).im * diff / (4.0 * PI * PI * u.t);
        (w * k.x, w * k.t)
    }

    #[test]
    fn integrand_matches_reference() {
        let s = BlackbodyScenario::new(particle(), 0.4, 0.3, 0.8).unwrap();
        for &(w, c) in &[(0.5, 0.3), (1.2, -0.9), (3.0, 0.99), (0.05, 0.0)] {
            let d = blackbody_integrand(&s, w, c).unwrap();
            let (fx, f0) = reference(&s, w, c);
            assert!((d.friction() - fx).abs() < 1e-12 * fx.abs().max(1e-300), "{w} {c}");
            assert!((d.power() - f0).abs() < 1e-12 * f0.abs().max(1e-300), "{w} {c}");
        }
    }

    #[test]
    fn equilibrium_at_rest_is_pointwise_zero() {
        let s = BlackbodyScenario::new(particle(), 0.0, 0.7, 0.7).unwrap();
        for &(w, c) in &[(0.1, 0.5), (2.0, -0.2), (7.0, 1.0)] {
            let d = blackbody_integrand(&s, w, c).unwrap();
            assert_eq!(d.friction(), 0.0);
            assert_eq!(d.power(), 0.0);
        }
    }

    #[test]
    fn zero_temperature_is_exactly_zero() {
        let s = BlackbodyScenario::new(particle(), 0.5, 0.0, 0.0).unwrap();
        let f = blackbody_force(&s, &spec()).unwrap();
        assert_eq!(f.friction.total(), 0.0);
        assert_eq!(f.power.unwrap().total(), 0.0);
    }

    #[test]
    fn moving_particle_is_dragged() {
        let s = BlackbodyScenario::new(particle(), 0.1, 0.5, 0.5).unwrap();
        let f = blackbody_force(&s, &spec()).unwrap();
        assert!(f.friction.total() < 0.0);
        assert!(f.converged());
    }

    #[test]
    fn force_is_odd_in_velocity() {
        let a = blackbody_force(&BlackbodyScenario::new(particle(), 0.2, 0.4, 0.6).unwrap(), &spec()).unwrap();
        let b = blackbody_force(&BlackbodyScenario::new(particle(), -0.2, 0.4, 0.6).unwrap(), &spec()).unwrap();
        let fa = a.friction.total();
        let fb = b.friction.total();
        assert!((fa + fb).abs() < 1e-7 * fa.abs());
        let pa = a.power.unwrap().total();
        let pb = b.power.unwrap().total();
        assert!((pa - pb).abs() < 1e-7 * pa.abs());
    }

    #[test]
    fn cold_particle_absorbs_energy() {
        let s = BlackbodyScenario::new(particle(), 0.0, 0.0, 0.5).unwrap();
        let f = blackbody_force(&s, &spec()).unwrap();
        assert!(f.power.unwrap().total() > 0.0);
        assert!(f.friction.total().abs() < 1e-10 * f.power.unwrap().total());
    }

    #[test]
    fn rejects_superluminal() {
        assert!(BlackbodyScenario::new(particle(), 1.0, 0.1, 0.1).is_err());
        assert!(BlackbodyScenario::new(particle(), 0.1, -0.1, 0.1).is_err());
    }
}
