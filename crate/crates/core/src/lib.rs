//! Radiation friction on a moving polarizable particle.
//!
//! Two geometries are covered: a particle drifting through isotropic
//! blackbody radiation, and a particle moving parallel to a dielectric
//! half-space. Both are computed from a manifestly covariant force kernel
//! whose tensor contractions collapse to scalar polarization weights.

pub mod blackbody;
pub mod covariant;
pub mod error;
pub mod force;
pub mod materials;
pub mod quadrature;
pub mod surface;

pub use blackbody::{blackbody_force, blackbody_integrand, BlackbodyDensity, BlackbodyScenario};
pub use covariant::{
    four_velocity, phi_contraction, phi_sigma_weight, polarization_projector,
    verify_remarkable_identity, CFourVector, FourVector, GreenMatrix, PolarizationLabel,
};
pub use error::{ForceError, PhysicsError};
pub use force::{ForceBreakdown, ForceComponent};
pub use materials::{LorentzOscillator, SurfaceMedium, ThermalState};
pub use quadrature::{IntegralResult, QuadratureSpec, RelativeTo};
pub use surface::{
    light_cone_kappa, normal_zero_point_integrand, surface_force, surface_integrand,
    ChannelDensity, SpectralDensityPoint, SurfaceScenario,
};
