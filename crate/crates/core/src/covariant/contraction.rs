//! Scalar contractions of Green matrices with the particle kinematics.

use num_complex::Complex64;

use super::tensor::GreenMatrix;
use super::vector::{CFourVector, METRIC};

/// Scalar contraction
///
/// ```text
/// φ = −(u·k)(u·h) G^κ_κ − (k·h) uGu + (u·h) uGk + (u·k) hGu
/// ```
///
/// where `aGb = a^ν G_{νκ} b^κ`. The same function yields φ, φ̄ and Φ;
/// only the matrix passed in differs.
pub fn phi_contraction(
    g: &GreenMatrix,
    u: &CFourVector,
    k: &CFourVector,
    h: &CFourVector,
) -> Complex64 {
    let uk = u.dot(k);
    let uh = u.dot(h);
    let kh = k.dot(h);
    -uk * uh * g.trace() - kh * g.sandwich(u, u) + uh * g.sandwich(u, k) + uk * g.sandwich(h, u)
}

/// Odd-pair bracket u^[κ g^λ][η u^ν] expanded into its four terms.
fn bracket(u: &[Complex64; 4], ka: usize, la: usize, eta: usize, nu: usize) -> Complex64 {
    let g = |a: usize, b: usize| if a == b { METRIC[a] } else { 0.0 };
    u[ka] * g(la, eta) * u[nu] - u[la] * g(ka, eta) * u[nu] - u[ka] * g(la, nu) * u[eta]
        + u[la] * g(ka, nu) * u[eta]
}

/// Rank-4 contraction −k_η {k_μ G_{νκ} h_λ + k_ν G_{μλ} h_κ} u^[κ g^λ][η u^ν],
/// evaluated index by index. Returns the covariant vector over μ.
pub fn dipole_kernel_contraction(
    g: &GreenMatrix,
    u: &CFourVector,
    k: &CFourVector,
    h: &CFourVector,
) -> [Complex64; 4] {
    let kl = k.lower();
    let hl = h.lower();
    let uc = u.components();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for eta in 0..4 {
            if kl[eta] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for nu in 0..4 {
                for ka in 0..4 {
                    for la in 0..4 {
                        let kernel = kl[mu] * g.get(nu, ka) * hl[la] + kl[nu] * g.get(mu, la) * hl[ka];
                        s += kl[eta] * kernel * bracket(&uc, ka, la, eta, nu);
                    }
                }
            }
        }
        *slot = -s;
    }
    out
}

/// Normalized residual of the dipole-kernel identity
///
/// ```text
/// −k_η {k_μ G_{νκ} h_λ + k_ν G_{μλ} h_κ} u^[κ g^λ][η u^ν] = k_μ Φ
/// ```
///
/// with Φ from [`phi_contraction`] applied to the same matrix. The residual
/// is divided by the product of the largest entries of every factor.
pub fn verify_remarkable_identity(
    g: &GreenMatrix,
    u: &CFourVector,
    k: &CFourVector,
    h: &CFourVector,
) -> f64 {
    let lhs = dipole_kernel_contraction(g, u, k, h);
    let phi = phi_contraction(g, u, k, h);
    let kl = k.lower();
    let scale = k.max_abs().powi(2) * g.max_abs() * h.max_abs() * u.max_abs().powi(2);
    if scale == 0.0 {
        return 0.0;
    }
    lhs.iter()
        .zip(kl.iter())
        .map(|(l, km)| (l - km * phi).norm())
        .fold(0.0, f64::max)
        / scale
}
