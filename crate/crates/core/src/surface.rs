//! Force on a particle moving parallel to a dielectric half-space.
//!
//! The particle sits at height `distance` above the interface z = 0 and
//! moves along x. Fluctuations of the reflected field are expanded in
//! frequency ω and in-plane wavevector k_par. Real-axis integrals run over
//! ω > 0 (the negative half is folded in) and over k_par in polar
//! coordinates, using the k_y → −k_y symmetry to halve the azimuth range.
//!
//! The zero-point part of the normal force does not converge on the real
//! frequency axis. At fixed k_par it is evaluated on a contour that leaves
//! the real axis at ω = max(0, v k_x) and runs parallel to the imaginary
//! axis, where the reflected field decays exponentially.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::covariant::{lorentz_gamma, weight_closed_form, PolarizationLabel};
use crate::error::{ForceError, PhysicsError};
use crate::force::{component, ForceBreakdown, ForceComponent};
use crate::materials::{
    coth_half, fresnel_from_wavevectors, retarded_sqrt, thermal_excess, LorentzOscillator,
    SurfaceMedium,
};
use crate::quadrature::{integrate_nested, integrate_vec, QuadratureSpec, RelativeTo, VecIntegral};

/// e^{-2κz} is dropped below e^{-2 DECAY_EXPONENT}.
const DECAY_EXPONENT: f64 = 18.0;
/// Thermal factors are dropped below e^{-THERMAL_EXPONENT}.
const THERMAL_EXPONENT: f64 = 40.0;
/// Cap on oscillation hints per propagating-sector integral.
const MAX_OSCILLATION_HINTS: usize = 400;
/// Relative tolerance of the magnitude-finding pass.
const PILOT_TOLERANCE: f64 = 1e-3;
/// Pieces below this fraction of the largest one are resolved to it.
const PIECE_FLOOR: f64 = 1e-3;

/// Particle above a planar dielectric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceScenario {
    pub particle: LorentzOscillator,
    pub velocity: f64,
    pub distance: f64,
    pub medium: SurfaceMedium,
    pub temp_particle: f64,
    pub temp_field: f64,
}

impl SurfaceScenario {
    pub fn new(
        particle: LorentzOscillator,
        velocity: f64,
        distance: f64,
        medium: SurfaceMedium,
        temp_particle: f64,
        temp_field: f64,
    ) -> Result<Self, PhysicsError> {
        if !(velocity.is_finite() && velocity.abs() < 1.0) {
            return Err(PhysicsError::InvalidVelocity {
                speed: velocity.abs(),
            });
        }
        if !(distance.is_finite() && distance > 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "z",
                value: distance,
                reason: "distance to the surface must be positive",
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
            distance,
            medium,
            temp_particle,
            temp_field,
        })
    }

    pub fn gamma(&self) -> f64 {
        lorentz_gamma(self.velocity * self.velocity)
    }

    /// Largest evanescent decay constant that still contributes.
    pub fn kappa_cutoff(&self) -> f64 {
        DECAY_EXPONENT / self.distance
    }

    /// Upper limit of the real-frequency integrals. Zero when every
    /// real-axis contribution vanishes identically.
    pub fn frequency_cutoff(&self) -> f64 {
        let gamma = self.gamma();
        let v = self.velocity.abs();
        let field = THERMAL_EXPONENT * self.temp_field;
        // u·k ≥ γ(ω(1 − v) − vκ) with κ up to the decay cutoff.
        let dipole = if self.temp_particle > 0.0 {
            (THERMAL_EXPONENT * self.temp_particle / gamma + v * self.kappa_cutoff()) / (1.0 - v)
        } else {
            0.0
        };
        // Anomalous-Doppler region u·k < 0 requires κ > ω/(γv).
        let anomalous = self.kappa_cutoff() * gamma * v;
        field.max(dipole).max(anomalous)
    }

    fn prefactor(&self) -> f64 {
        1.0 / (self.gamma() * (2.0 * PI).powi(3))
    }
}

/// Decay constant κ = sqrt(k_par² − (ω + i0)²) of the vacuum wave:
/// real and positive for evanescent waves, −i sgn(ω) sqrt(ω² − k_par²) for
/// propagating ones.
pub fn light_cone_kappa(omega: f64, k_par: f64) -> Complex64 {
    light_cone_kappa_complex(Complex64::new(omega, 0.0), k_par)
}

/// κ at complex frequency in the closed upper half-plane.
pub fn light_cone_kappa_complex(omega: Complex64, k_par: f64) -> Complex64 {
    retarded_sqrt(k_par * k_par - omega * omega, omega.re)
}

/// Reflection data of the two transverse channels at one (ω, k_par).
struct Optics {
    kappa: Complex64,
    /// φ_σ for s and p.
    weight: [Complex64; 2],
    /// r_σ e^{−2κz} for s and p.
    reflected: [Complex64; 2],
}

impl Optics {
    /// Σ φ_σ r_σ e^{−2κz}.
    fn w(&self) -> Complex64 {
        self.weight[0] * self.reflected[0] + self.weight[1] * self.reflected[1]
    }
}

fn optics(
    s: &SurfaceScenario,
    omega: Complex64,
    kx: f64,
    ky: f64,
    kappa: Complex64,
) -> Result<Optics, PhysicsError> {
    let n2 = s.medium.index_squared();
    let kz = Complex64::i() * kappa;
    let kzm = Complex64::i() * retarded_sqrt(kappa * kappa - (n2 - 1.0) * omega * omega, omega.re);
    let decay = (-2.0 * kappa * s.distance).exp();
    let mut out = Optics {
        kappa,
        weight: [Complex64::new(0.0, 0.0); 2],
        reflected: [Complex64::new(0.0, 0.0); 2],
    };
    for (i, sigma) in PolarizationLabel::TRANSVERSE.into_iter().enumerate() {
        out.weight[i] = weight_closed_form(sigma, s.velocity, omega, kx, ky)?;
        out.reflected[i] = fresnel_from_wavevectors(sigma, n2, kz, kzm)? * decay;
    }
    Ok(out)
}

/// Integrand pieces of one polarization channel.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelDensity {
    pub friction_field: f64,
    pub friction_dipole: f64,
    pub normal_field: f64,
    pub normal_dipole: f64,
}

impl ChannelDensity {
    pub fn friction(&self) -> f64 {
        self.friction_field + self.friction_dipole
    }

    pub fn normal(&self) -> f64 {
        self.normal_field + self.normal_dipole
    }
}

/// Spectral density of the surface force at one real (ω, k_par), per unit
/// dω d²k_par over the full frequency axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensityPoint {
    pub omega: f64,
    pub k_par: [f64; 2],
    pub s: ChannelDensity,
    pub p: ChannelDensity,
}

impl SpectralDensityPoint {
    pub fn friction(&self) -> f64 {
        self.s.friction() + self.p.friction()
    }

    pub fn normal(&self) -> f64 {
        self.s.normal() + self.p.normal()
    }
}

/// Force integrand with the full thermal factors coth(ω/2T_F) and
/// coth(u·k/2T_A), before any frequency folding. Valid for ω ≠ 0 of either
/// sign; the density is even under (ω, k_par) → (−ω, −k_par).
pub fn surface_integrand(
    scenario: &SurfaceScenario,
    omega: f64,
    k_par: [f64; 2],
) -> Result<SpectralDensityPoint, PhysicsError> {
    let [kx, ky] = k_par;
    let kpar = kx.hypot(ky);
    let gamma = scenario.gamma();
    let uk = gamma * (omega - scenario.velocity * kx);
    let coth_f = coth_half(omega, scenario.temp_field)?;
    let coth_a = coth_half(uk, scenario.temp_particle)?;
    let alpha = scenario.particle.polarizability(uk);
    let o = optics(
        scenario,
        Complex64::new(omega, 0.0),
        kx,
        ky,
        light_cone_kappa(omega, kpar),
    )?;
    let pre = 0.5 * scenario.prefactor();
    let channel = |i: usize| {
        let phi = o.weight[i].re;
        let z = o.reflected[i];
        let x = phi * (z / o.kappa).im;
        ChannelDensity {
            friction_field: pre * coth_f * kx * alpha.im * x,
            friction_dipole: -pre * coth_a * kx * alpha.im * x,
            normal_field: -pre * coth_f * alpha.re * phi * z.im,
            normal_dipole: -pre * coth_a * alpha.im * phi * z.re,
        }
    };
    Ok(SpectralDensityPoint {
        omega,
        k_par,
        s: channel(0),
        p: channel(1),
    })
}

/// The parts of the folded density that depend only on (ω, κ).
struct Ring {
    omega: f64,
    kappa: Complex64,
    /// r_σ e^{−2κz} for s and p.
    reflected: [Complex64; 2],
    thermal_field: f64,
}

impl Ring {
    fn new(s: &SurfaceScenario, omega: f64, kappa: Complex64) -> Option<Self> {
        let w = Complex64::new(omega, 0.0);
        let n2 = s.medium.index_squared();
        let kz = Complex64::i() * kappa;
        let kzm = Complex64::i() * retarded_sqrt(kappa * kappa - (n2 - 1.0) * w * w, omega);
        let decay = (-2.0 * kappa * s.distance).exp();
        let mut reflected = [Complex64::new(0.0, 0.0); 2];
        for (i, sigma) in PolarizationLabel::TRANSVERSE.into_iter().enumerate() {
            reflected[i] = fresnel_from_wavevectors(sigma, n2, kz, kzm).ok()? * decay;
        }
        Some(Self {
            omega,
            kappa,
            reflected,
            thermal_field: thermal_excess(omega, s.temp_field).ok()?,
        })
    }
}

/// Folded real-axis density for ω > 0 with the zero-point split applied:
/// `[F_x field, F_x dipole, F_z field, F_z dipole (thermal part)]`.
/// Points where a projector or thermal factor is singular have measure zero
/// and contribute nothing.
fn folded_density(s: &SurfaceScenario, ring: &Ring, kx: f64, ky: f64) -> [f64; 4] {
    let omega = ring.omega;
    let gamma = s.gamma();
    let uk = gamma * (omega - s.velocity * kx);
    if uk == 0.0 || (kx == 0.0 && ky == 0.0) {
        return [0.0; 4];
    }
    let w = Complex64::new(omega, 0.0);
    let mut x = 0.0;
    let mut y = Complex64::new(0.0, 0.0);
    for (i, sigma) in PolarizationLabel::TRANSVERSE.into_iter().enumerate() {
        let Ok(phi) = weight_closed_form(sigma, s.velocity, w, kx, ky) else {
            return [0.0; 4];
        };
        x += phi.re * (ring.reflected[i] / ring.kappa).im;
        y += phi.re * ring.reflected[i];
    }
    let Ok(te_a) = thermal_excess(uk, s.temp_particle) else {
        return [0.0; 4];
    };
    let te_f = ring.thermal_field;
    let alpha = s.particle.polarizability(uk);
    let c = s.prefactor();
    // 1 − coth(u·k/2T_A): the field zero-point term moved onto the dipole.
    let dipole_factor = 1.0 - uk.signum() - te_a;
    [
        c * te_f * kx * alpha.im * x,
        c * dipole_factor * kx * alpha.im * x,
        -c * te_f * alpha.re * y.im,
        -c * te_a * alpha.im * y.re,
    ]
}

/// Integrand of the zero-point normal force at fixed k_par, per unit
/// d²k_par dt. For t < a = max(0, v k_x) it is evaluated at real ω = t;
/// beyond, at ω = a + i(t − a) on the rotated contour.
pub fn normal_zero_point_integrand(
    scenario: &SurfaceScenario,
    k_par: [f64; 2],
    t: f64,
) -> Result<f64, PhysicsError> {
    let [kx, ky] = k_par;
    let kpar = kx.hypot(ky);
    let gamma = scenario.gamma();
    let a = (scenario.velocity * kx).max(0.0);
    let c = scenario.prefactor();
    if t < a {
        let o = optics(
            scenario,
            Complex64::new(t, 0.0),
            kx,
            ky,
            light_cone_kappa(t, kpar),
        )?;
        let alpha = scenario.particle.polarizability(gamma * (scenario.velocity * kx - t));
        Ok(-c * (alpha * o.w()).im)
    } else {
        let omega = Complex64::new(a, t - a);
        let o = optics(scenario, omega, kx, ky, light_cone_kappa_complex(omega, kpar))?;
        let alpha = scenario.particle.at(gamma * (omega - scenario.velocity * kx));
        Ok(-c * (alpha * o.w()).re)
    }
}

fn acos_hint(x: f64) -> Option<f64> {
    (x.abs() < 1.0).then(|| x.acos())
}

/// Azimuthal angles where the Doppler-shifted frequency crosses zero or the
/// particle resonance.
fn azimuth_hints(s: &SurfaceScenario, omega: f64, k: f64) -> Vec<f64> {
    let vk = s.velocity * k;
    if vk == 0.0 {
        return Vec::new();
    }
    let w0 = s.particle.omega0() / s.gamma();
    // The azimuth is folded onto [0, π/2], so a feature at ψ also appears
    // at π − ψ.
    [omega / vk, (omega - w0) / vk, (omega + w0) / vk]
        .into_iter()
        .filter_map(acos_hint)
        .map(|psi| psi.min(PI - psi))
        .collect()
}

/// Which part of the k_par plane a radial integral covers.
#[derive(Clone, Copy)]
enum Sector {
    /// k_par < ω, variable q = sqrt(ω² − k_par²).
    Propagating,
    /// k_par > ω, variable κ = sqrt(k_par² − ω²).
    Evanescent,
}

/// Tolerances for the axes below the outermost one, and the factors that
/// bring every force piece to order one.
#[derive(Debug, Clone)]
struct Plan {
    middle: QuadratureSpec,
    inner: QuadratureSpec,
    scale: [f64; 4],
}

/// ∫ d²k_par of the folded density at fixed ω, for one sector.
fn sector_integral(
    s: &SurfaceScenario,
    omega: f64,
    sector: Sector,
    plan: &Plan,
    evals: &Cell<usize>,
) -> VecIntegral<4> {
    let z = s.distance;
    // Radial variable r = b + u|u|, which removes the square-root branch
    // point of the medium wavevector at r = b.
    let (hi, b, mut hints): (f64, f64, Vec<f64>) = match sector {
        Sector::Propagating => {
            let step = PI / (2.0 * z);
            let count = ((omega / step) as usize).min(MAX_OSCILLATION_HINTS);
            (omega, 0.0, (1..=count).map(|j| j as f64 * step).collect())
        }
        Sector::Evanescent => {
            let band = omega * (s.medium.real_index().powi(2) - 1.0).sqrt();
            (s.kappa_cutoff(), band.min(s.kappa_cutoff()), Vec::new())
        }
    };
    // Radii where a Doppler feature of the azimuthal integrand reaches the
    // end of the ψ range.
    let v = s.velocity.abs();
    if v > 0.0 {
        let w0 = s.particle.omega0() / s.gamma();
        for k in [omega / v, (omega - w0).abs() / v, (omega + w0) / v] {
            let r2 = match sector {
                Sector::Propagating => omega * omega - k * k,
                Sector::Evanescent => k * k - omega * omega,
            };
            if r2 > 0.0 && r2.sqrt() < hi {
                hints.push(r2.sqrt());
            }
        }
    }
    let to_u = |r: f64| (r - b).signum() * (r - b).abs().sqrt();
    let radial = |u: f64| -> [f64; 12] {
        let r = b + u * u.abs();
        let (k, kappa) = match sector {
            Sector::Propagating => ((omega * omega - r * r).max(0.0).sqrt(), Complex64::new(0.0, -r)),
            Sector::Evanescent => ((omega * omega + r * r).sqrt(), Complex64::new(r, 0.0)),
        };
        // k dk = r dr in both sectors; the factor 2 restores k_y < 0.
        let weight = 4.0 * u.abs() * r;
        let Some(ring) = Ring::new(s, omega, kappa) else {
            return [0.0; 12];
        };
        let ispec = plan.inner.clone().with_breakpoints(azimuth_hints(s, omega, k));
        let res = integrate_vec::<4, _>(
            |psi| {
                let (sn, cs) = psi.sin_cos();
                // Pair k_x with −k_x so that the O(v) asymmetry of F_x is
                // formed pointwise rather than by cancellation between
                // quadrature panels.
                let fwd = folded_density(s, &ring, k * cs, k * sn);
                let back = folded_density(s, &ring, -k * cs, k * sn);
                std::array::from_fn(|c| weight * plan.scale[c] * (fwd[c] + back[c]))
            },
            0.0,
            0.5 * PI,
            &ispec,
            4,
        );
        evals.set(evals.get() + res.evaluations);
        res.columns()
    };
    let mut breaks: Vec<f64> = hints.into_iter().map(to_u).collect();
    if b > 0.0 {
        breaks.push(0.0);
    }
    integrate_nested::<4, 12, _>(radial, to_u(0.0), to_u(hi), &plan.middle.clone().with_breakpoints(breaks))
}

fn real_axis_pass(s: &SurfaceScenario, outer: &QuadratureSpec, plan: &Plan) -> VecIntegral<4> {
    let lambda = s.frequency_cutoff();
    let gamma = s.gamma();
    let v = s.velocity.abs();
    let w0 = s.particle.omega0();
    let mut hints = vec![w0 / gamma, w0 / (gamma * (1.0 + v)), w0 / (gamma * (1.0 - v))];
    for t in [s.temp_field, s.temp_particle] {
        if t > 0.0 {
            hints.extend([t, 5.0 * t, 20.0 * t]);
        }
    }
    let evals = Cell::new(0);
    let integrand = |omega: f64| -> [f64; 12] {
        let r = sector_integral(s, omega, Sector::Propagating, plan, &evals)
            .merge(&sector_integral(s, omega, Sector::Evanescent, plan, &evals));
        evals.set(evals.get() + r.evaluations);
        r.columns()
    };
    let mut r = integrate_nested::<4, 12, _>(integrand, 0.0, lambda, &outer.clone().with_breakpoints(hints));
    r.evaluations += evals.get();
    for c in 0..4 {
        let f = 1.0 / plan.scale[c];
        r.value[c] *= f;
        r.error[c] *= f;
        r.abs[c] *= f;
    }
    r
}

/// Real-frequency part of the force: all of F_x and the thermal parts of F_z.
///
/// A coarse pilot pass fixes the magnitude of each piece and how strongly
/// its integrand cancels. The accurate pass works with pieces normalized to
/// one and gives the inner axes tolerances relative to their own ∫|f|, so
/// that error is spent where the integrand is large. A piece smaller than
/// 10⁻³ of the largest one is resolved to that floor.
fn real_axis_force(s: &SurfaceScenario, spec: &QuadratureSpec) -> VecIntegral<4> {
    let lambda = s.frequency_cutoff();
    if lambda == 0.0 {
        return VecIntegral {
            value: [0.0; 4],
            error: [0.0; 4],
            abs: [0.0; 4],
            evaluations: 0,
            converged: true,
        };
    }
    let pilot_spec = QuadratureSpec {
        rel_tol: spec.rel_tol.max(PILOT_TOLERANCE),
        ..spec.clone()
    };
    let pilot_plan = Plan {
        middle: pilot_spec.inner(0.3).relative_to(RelativeTo::Magnitude),
        inner: pilot_spec.inner(0.1).relative_to(RelativeTo::Magnitude),
        scale: [1.0; 4],
    };
    let pilot = real_axis_pass(s, &pilot_spec, &pilot_plan);
    if spec.rel_tol >= PILOT_TOLERANCE {
        return pilot;
    }
    let largest = pilot.value.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if largest == 0.0 {
        return pilot;
    }
    let scale = pilot.value.map(|x| 1.0 / x.abs().max(PIECE_FLOOR * largest));
    // Worst ratio of ∫|f| to the normalized piece: how much the inner axes
    // must out-resolve the total.
    let cancellation = (0..4)
        .map(|c| pilot.abs[c] * scale[c])
        .fold(1.0f64, f64::max);
    let rel = spec.rel_tol;
    let inner_spec = |factor: f64| QuadratureSpec {
        rel_tol: factor * rel / cancellation,
        abs_tol: f64::MIN_POSITIVE,
        relative_to: RelativeTo::Magnitude,
        ..spec.clone()
    };
    let plan = Plan {
        middle: inner_spec(0.1),
        inner: inner_spec(0.01),
        scale,
    };
    let outer = QuadratureSpec {
        abs_tol: rel,
        ..spec.clone()
    };
    let mut r = real_axis_pass(s, &outer, &plan);
    r.evaluations += pilot.evaluations;
    r
}

/// Zero-point part of F_z from the rotated contour.
fn zero_point_normal(s: &SurfaceScenario, spec: &QuadratureSpec) -> Result<VecIntegral<1>, PhysicsError> {
    let z = s.distance;
    let gamma = s.gamma();
    let xi_max = s.kappa_cutoff();
    let k_max = gamma * s.kappa_cutoff();
    let damping = s.particle.damping();
    let w0 = s.particle.omega0() / gamma;
    let n = s.medium.real_index();
    let inner_spec = spec.inner(0.01);
    let middle_spec = spec.inner(0.1);
    let failure = Cell::new(None);
    let evals = Cell::new(0);

    let along_t = |k: f64, psi: f64| -> VecIntegral<1> {
        let (sn, cs) = psi.sin_cos();
        let kp = [k * cs, k * sn];
        let a = (s.velocity * kp[0]).max(0.0);
        let mut hints = vec![a, a + 1.0 / z];
        if a > 0.0 {
            hints.push(a - w0);
            if k / n < a {
                hints.push(k / n);
            }
        }
        if damping > 0.0 {
            hints.extend([a + damping, a + 10.0 * damping]);
        }
        let ispec = inner_spec.clone().with_breakpoints(hints);
        let r = integrate_vec(
            |t| match normal_zero_point_integrand(s, kp, t) {
                Ok(x) => [x],
                Err(e) => {
                    failure.set(Some(e));
                    [0.0]
                }
            },
            0.0,
            a + xi_max,
            &ispec,
            1,
        );
        evals.set(evals.get() + r.evaluations);
        r
    };

    let radial = |k: f64| -> [f64; 3] {
        if k == 0.0 {
            return [0.0; 3];
        }
        let r = if s.velocity == 0.0 {
            // Nothing depends on the azimuth.
            along_t(k, 0.5 * PI).scaled(2.0 * PI)
        } else {
            let r = integrate_nested::<1, 3, _>(|psi| along_t(k, psi).columns(), 0.0, PI, &middle_spec);
            evals.set(evals.get() + r.evaluations);
            r.scaled(2.0)
        };
        r.scaled(k).columns()
    };
    let mut r = integrate_nested::<1, 3, _>(radial, 0.0, k_max, &spec.clone().with_breakpoints([1.0 / z]));
    if let Some(e) = failure.take() {
        return Err(e);
    }
    r.evaluations += evals.get();
    Ok(r)
}

/// Friction F_x and normal force F_z on the particle. F_x < 0 is drag;
/// F_z < 0 is attraction towards the surface.
pub fn surface_force(
    scenario: &SurfaceScenario,
    spec: &QuadratureSpec,
) -> Result<ForceBreakdown, ForceError> {
    let real = real_axis_force(scenario, spec);
    let vacuum = zero_point_normal(scenario, spec)?;
    let part = |i| component(&real, i, spec);
    let vac = component(&vacuum, 0, spec);
    ForceBreakdown {
        friction: ForceComponent {
            field: part(0),
            dipole: part(1),
        },
        normal: Some(ForceComponent {
            field: part(2),
            dipole: part(3) + vac,
        }),
        power: None,
        evaluations: real.evaluations + vacuum.evaluations,
    }
    .check()
}
