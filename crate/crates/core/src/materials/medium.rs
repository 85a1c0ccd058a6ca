//! Dielectric half-space below z = 0: medium wavevector and reflection
//! amplitudes for the four polarization channels.

use num_complex::Complex64;

use crate::covariant::PolarizationLabel;
use crate::error::PhysicsError;

/// Non-magnetic dielectric with refractive index `n`.
///
/// Real `n ≥ 1` is the default; a complex index with Im n ≥ 0 is accepted
/// through [`SurfaceMedium::lossy`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceMedium {
    n: Complex64,
}

impl SurfaceMedium {
    pub fn new(n: f64) -> Result<Self, PhysicsError> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "n",
                value: n,
                reason: "refractive index must be at least 1",
            });
        }
        Ok(Self {
            n: Complex64::new(n, 0.0),
        })
    }

    /// Constant complex index. Its absorption does not vanish as ω → 0, so
    /// thermal surface forces, whose field term carries 2T/ω there, diverge
    /// logarithmically at low frequency; only T_F = 0 results are finite.
    pub fn lossy(n_re: f64, n_im: f64) -> Result<Self, PhysicsError> {
        if !(n_im.is_finite() && n_im >= 0.0) {
            return Err(PhysicsError::InvalidParameter {
                name: "n_imag",
                value: n_im,
                reason: "absorption index must be non-negative",
            });
        }
        let mut m = Self::new(n_re)?;
        m.n.im = n_im;
        Ok(m)
    }

    pub fn index(&self) -> Complex64 {
        self.n
    }

    pub fn index_squared(&self) -> Complex64 {
        self.n * self.n
    }

    pub fn is_lossless(&self) -> bool {
        self.n.im == 0.0
    }

    /// Real part of n, the edge of the frustrated-total-reflection band in
    /// units of |ω| for lossless media.
    pub fn real_index(&self) -> f64 {
        self.n.re
    }
}

/// sqrt(w) on the branch Re ≥ 0, with the cut approached from the side
/// selected by ω + i0: on the negative real axis the result is
/// −i sgn(ω) sqrt(−w).
pub(crate) fn retarded_sqrt(w: Complex64, omega_sign: f64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        Complex64::new(0.0, -omega_sign.signum() * (-w.re).sqrt())
    } else {
        w.sqrt()
    }
}

/// Medium wavevector k_z' = sqrt(n²k_z² + (n² − 1)k_par²), written as
/// n k_z sqrt(1 + (n² − 1)k_par²/(n²k_z²)) so that the principal branch puts
/// the cut on the imaginary segment between ±i k_par sqrt(1 − 1/n²).
pub fn medium_kz(medium: &SurfaceMedium, k_z: Complex64, k_par: f64) -> Complex64 {
    let n = medium.index();
    let n2 = n * n;
    if k_z == Complex64::new(0.0, 0.0) {
        return ((n2 - 1.0) * k_par * k_par).sqrt();
    }
    n * k_z * (1.0 + (n2 - 1.0) * k_par * k_par / (n2 * k_z * k_z)).sqrt()
}

/// k_z' for a wave on the vacuum light cone, k_z' = sqrt(n²ω² − k_par²)
/// with Im k_z' ≥ 0. `omega` may lie in the upper half-plane.
pub fn light_cone_medium_kz(medium: &SurfaceMedium, omega: Complex64, k_par: f64) -> Complex64 {
    let w = k_par * k_par - medium.index_squared() * omega * omega;
    Complex64::i() * retarded_sqrt(w, omega.re)
}

/// Reflection amplitude from precomputed vacuum and medium wavevectors.
pub fn fresnel_from_wavevectors(
    sigma: PolarizationLabel,
    n2: Complex64,
    k_z: Complex64,
    kz_medium: Complex64,
) -> Result<Complex64, PhysicsError> {
    let (num, den) = match sigma {
        PolarizationLabel::S => (k_z - kz_medium, k_z + kz_medium),
        PolarizationLabel::P => (n2 * k_z - kz_medium, n2 * k_z + kz_medium),
        PolarizationLabel::L | PolarizationLabel::K => {
            (k_z - n2 * kz_medium, k_z + n2 * kz_medium)
        }
    };
    if den.norm() == 0.0 {
        return Err(PhysicsError::FresnelPole { sigma });
    }
    Ok(num / den)
}

/// Reflection amplitude r_σ at vacuum wavevector component `k_z`.
pub fn fresnel(
    sigma: PolarizationLabel,
    medium: &SurfaceMedium,
    k_z: Complex64,
    k_par: f64,
) -> Result<Complex64, PhysicsError> {
    let kzm = medium_kz(medium, k_z, k_par);
    fresnel_from_wavevectors(sigma, medium.index_squared(), k_z, kzm)
}
