//! Particle response, thermal occupation and dielectric half-space optics.

mod medium;
mod polarizability;
mod thermal;

pub(crate) use medium::retarded_sqrt;
pub use medium::{
    fresnel, fresnel_from_wavevectors, light_cone_medium_kz, medium_kz, SurfaceMedium,
};
pub use polarizability::LorentzOscillator;
pub use thermal::{
    coth_half, occupation, occupation_difference, thermal_excess, ThermalState,
    LAURENT_THRESHOLD,
};
