//! Minkowski-space kinematics, field tensors and the contractions that
//! reduce the covariant force to scalar polarization weights.

mod contraction;
mod identities;
mod polarization;
mod tensor;
mod vector;

pub use contraction::{dipole_kernel_contraction, phi_contraction, verify_remarkable_identity};
pub use identities::{gauge_cancellation_residual, run_identity_suite, IdentityCheck, IdentityReport};
pub use polarization::{
    phi_sigma_weight, polarization_projector, weight_by_contraction, weight_closed_form,
    PolarizationLabel,
};
pub use tensor::{force_density, induced_dipole, spatial_force, AntisymTensor2, GreenMatrix};
pub use vector::{
    doppler_frequency, four_velocity, lorentz_gamma, minkowski_dot, CFourVector, FourVector,
    METRIC,
};
