//! Reflection projectors of the planar Green function and the polarization
//! weights φ_σ they produce.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::contraction::phi_contraction;
use super::tensor::GreenMatrix;
use super::vector::{lorentz_gamma, CFourVector};
use crate::error::PhysicsError;

/// Polarization channel of a reflected wave. `S` and `P` are transverse and
/// gauge independent; `L` (scalar) and `K` (longitudinal) are gauge modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationLabel {
    S,
    P,
    L,
    K,
}

impl PolarizationLabel {
    pub const ALL: [PolarizationLabel; 4] = [Self::S, Self::P, Self::L, Self::K];
    pub const TRANSVERSE: [PolarizationLabel; 2] = [Self::S, Self::P];
}

impl fmt::Display for PolarizationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::S => "s",
            Self::P => "p",
            Self::L => "l",
            Self::K => "k",
        };
        f.write_str(s)
    }
}

impl FromStr for PolarizationLabel {
    type Err = PhysicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s" => Ok(Self::S),
            "p" => Ok(Self::P),
            "l" => Ok(Self::L),
            "k" => Ok(Self::K),
            other => Err(PhysicsError::UnknownPolarization(other.to_string())),
        }
    }
}

/// Projector P^(σ)_{μν} for wavevector `k` (z component may be complex).
/// Only the spatial block (or the 00 entry for `L`) is populated.
pub fn polarization_projector(
    sigma: PolarizationLabel,
    k: &CFourVector,
) -> Result<GreenMatrix, PhysicsError> {
    let (kx, ky, kz) = (k.x, k.y, k.z);
    let kpar2 = kx * kx + ky * ky;
    let k3 = kpar2 + kz * kz;
    let mut g = GreenMatrix::zero();
    match sigma {
        PolarizationLabel::L => {
            g.c[0][0] = Complex64::new(1.0, 0.0);
        }
        PolarizationLabel::S => {
            if kpar2.norm() == 0.0 {
                return Err(PhysicsError::DegenerateDirection { sigma });
            }
            let block = [
                [-ky * ky, kx * ky, Complex64::new(0.0, 0.0)],
                [kx * ky, -kx * kx, Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0); 3],
            ];
            fill_spatial(&mut g, &block, kpar2);
        }
        PolarizationLabel::P => {
            if kpar2.norm() == 0.0 || k3.norm() == 0.0 {
                return Err(PhysicsError::DegenerateDirection { sigma });
            }
            let kz2 = kz * kz;
            let block = [
                [kz2 * kx * kx, kz2 * kx * ky, kz * kx * kpar2],
                [kz2 * kx * ky, kz2 * ky * ky, kz * ky * kpar2],
                [-kz * kx * kpar2, -kz * ky * kpar2, -kpar2 * kpar2],
            ];
            fill_spatial(&mut g, &block, kpar2 * k3);
        }
        PolarizationLabel::K => {
            if k3.norm() == 0.0 {
                return Err(PhysicsError::DegenerateDirection { sigma });
            }
            // −k_i k_{r j} with k_r the mirror image in z.
            let kv = [kx, ky, kz];
            let kr = [kx, ky, -kz];
            let mut block = [[Complex64::new(0.0, 0.0); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    block[i][j] = -kv[i] * kr[j];
                }
            }
            fill_spatial(&mut g, &block, k3);
        }
    }
    Ok(g)
}

fn fill_spatial(g: &mut GreenMatrix, block: &[[Complex64; 3]; 3], denom: Complex64) {
    for i in 0..3 {
        for j in 0..3 {
            g.c[i + 1][j + 1] = block[i][j] / denom;
        }
    }
}

/// φ_σ(k) obtained by contracting the projector with h = −k_r.
pub fn weight_by_contraction(
    sigma: PolarizationLabel,
    u: &CFourVector,
    k: &CFourVector,
) -> Result<Complex64, PhysicsError> {
    let p = polarization_projector(sigma, k)?;
    Ok(phi_contraction(&p, u, k, &(-k.reflected())))
}

/// Closed-form weight for a particle moving with speed `v` along x,
/// valid for complex frequency. The light-cone condition has been used, so
/// the result does not depend on k_z.
pub fn weight_closed_form(
    sigma: PolarizationLabel,
    v: f64,
    omega: Complex64,
    kx: f64,
    ky: f64,
) -> Result<Complex64, PhysicsError> {
    let kpar2 = kx * kx + ky * ky;
    if kpar2 == 0.0 {
        return Err(PhysicsError::DegenerateDirection { sigma });
    }
    let g2 = lorentz_gamma(v * v).powi(2);
    let doppler = omega - v * kx;
    let off_shell = 1.0 - omega * omega / kpar2;
    match sigma {
        PolarizationLabel::S => Ok(g2 * doppler * doppler + 2.0 * g2 * (v * ky).powi(2) * off_shell),
        PolarizationLabel::P => {
            Ok(g2 * doppler * doppler + 2.0 * g2 * (kpar2 - (v * kx).powi(2)) * off_shell)
        }
        _ => Err(PhysicsError::NotTransverse { sigma }),
    }
}

/// Real polarization weight φ_s or φ_p at real frequency `omega` for
/// in-plane wavevector `k_par`, particle speed `v` along x.
pub fn phi_sigma_weight(
    sigma: PolarizationLabel,
    v: f64,
    omega: f64,
    k_par: [f64; 2],
) -> Result<f64, PhysicsError> {
    weight_closed_form(sigma, v, Complex64::new(omega, 0.0), k_par[0], k_par[1]).map(|z| z.re)
}
