//! Rank-2 tensors: antisymmetric field/polarization tensors and generic
//! Green matrices with two lower indices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::vector::{FourVector, METRIC};

/// Antisymmetric 4×4 tensor, stored in full but only ever built from its six
/// independent entries so that T_{μν} = −T_{νμ} holds bit for bit.
///
/// Faraday layout (two lower indices):
///
/// ```text
///   F_{0i} =  E^i      F_{i0} = −E^i
///   F_{ij} = −ε_{ijk} B^k
/// ```
///
/// With this layout `f_μ = F_{μν} j^ν` gives `f^i = −f_i = ρE + j×B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntisymTensor2<T = f64> {
    c: [[T; 4]; 4],
}

impl<T> AntisymTensor2<T>
where
    T: Copy + Zero + Neg<Output = T>,
{
    /// Build from the upper triangle `[t01, t02, t03, t12, t13, t23]`.
    pub fn from_upper(u: [T; 6]) -> Self {
        let z = T::zero();
        let [a01, a02, a03, a12, a13, a23] = u;
        Self {
            c: [
                [z, a01, a02, a03],
                [-a01, z, a12, a13],
                [-a02, -a12, z, a23],
                [-a03, -a13, -a23, z],
            ],
        }
    }

    /// Faraday tensor F_{μν} from the electric and magnetic fields.
    pub fn faraday(e: [T; 3], b: [T; 3]) -> Self {
        Self::from_upper([e[0], e[1], e[2], -b[2], b[1], -b[0]])
    }

    /// Polarization tensor M^{μν} from polarization P and magnetization M,
    /// laid out like the Faraday tensor with E → P, B → M.
    pub fn polarization(p: [T; 3], m: [T; 3]) -> Self {
        Self::faraday(p, m)
    }

    pub fn get(&self, mu: usize, nu: usize) -> T {
        self.c[mu][nu]
    }

    pub fn components(&self) -> [[T; 4]; 4] {
        self.c
    }
}

impl<T> AntisymTensor2<T>
where
    T: Copy + Zero + Add<Output = T> + Mul<Output = T>,
{
    /// Contraction T_{μν} a^ν, returned with the free index lowered.
    pub fn contract_right(&self, a: &FourVector<T>) -> [T; 4] {
        let a = a.components();
        let mut out = [T::zero(); 4];
        for (mu, row) in self.c.iter().enumerate() {
            out[mu] = row
                .iter()
                .zip(a.iter())
                .fold(T::zero(), |s, (&t, &x)| s + t * x);
        }
        out
    }
}

/// Covariant force density f_μ = F_{μν} j^ν.
pub fn force_density(field: &AntisymTensor2, current: &FourVector) -> FourVector {
    FourVector::from_components(field.contract_right(current))
}

/// Spatial force ρE + j×B, i.e. the raised spatial part of [`force_density`].
pub fn spatial_force(field: &AntisymTensor2, current: &FourVector) -> [f64; 3] {
    let f = force_density(field, current);
    [-f.x, -f.y, -f.z]
}

/// Induced dipole d^μ = α g^{μκ} F_{κλ} u^λ of a particle with four-velocity
/// `u`. The component along `u` is zero by antisymmetry.
pub fn induced_dipole(alpha: f64, field: &AntisymTensor2, u: &FourVector) -> FourVector {
    let lowered = field.contract_right(u);
    FourVector::new(
        alpha * METRIC[0] * lowered[0],
        alpha * METRIC[1] * lowered[1],
        alpha * METRIC[2] * lowered[2],
        alpha * METRIC[3] * lowered[3],
    )
}

/// Generic complex 4×4 matrix G_{μν} with two lower indices and no assumed
/// symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenMatrix {
    pub c: [[Complex64; 4]; 4],
}

impl Default for GreenMatrix {
    fn default() -> Self {
        Self::zero()
    }
}

impl GreenMatrix {
    pub fn zero() -> Self {
        Self {
            c: [[Complex64::zero(); 4]; 4],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut g = Self::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                g.c[mu][nu] = f(mu, nu);
            }
        }
        g
    }

    /// The metric scaled by `s`: s g_{μν}.
    pub fn metric(s: Complex64) -> Self {
        Self::from_fn(|mu, nu| if mu == nu { s * METRIC[mu] } else { Complex64::zero() })
    }

    /// Free-space Feynman-gauge kernel −g_{μν}/k² at an off-shell point.
    pub fn feynman(k2: Complex64) -> Self {
        Self::metric(-1.0 / k2)
    }

    pub fn get(&self, mu: usize, nu: usize) -> Complex64 {
        self.c[mu][nu]
    }

    /// Trace with one index raised, G^κ_κ = g^{κλ} G_{λκ}.
    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| METRIC[k] * self.c[k][k]).sum()
    }

    /// Bilinear form a^ν G_{νκ} b^κ.
    pub fn sandwich(&self, a: &FourVector<Complex64>, b: &FourVector<Complex64>) -> Complex64 {
        let a = a.components();
        let b = b.components();
        let mut s = Complex64::zero();
        for nu in 0..4 {
            for ka in 0..4 {
                s += a[nu] * self.c[nu][ka] * b[ka];
            }
        }
        s
    }

    /// Largest modulus among the entries.
    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    /// Ordinary matrix product over the spatial block (indices 1..3),
    /// without any metric factors.
    pub fn spatial_product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 1..4 {
            for j in 1..4 {
                out.c[i][j] = (1..4).map(|k| self.c[i][k] * other.c[k][j]).sum();
            }
        }
        out
    }
}

impl Add for GreenMatrix {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|m, n| self.c[m][n] + o.c[m][n])
    }
}

impl Sub for GreenMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|m, n| self.c[m][n] - o.c[m][n])
    }
}

impl Mul<Complex64> for GreenMatrix {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        Self::from_fn(|m, n| self.c[m][n] * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::vector::four_velocity;

    fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    #[test]
    fn antisymmetric_by_construction() {
        let t = AntisymTensor2::from_upper([1.0, -2.0, 3.5, 0.25, -7.0, 11.0]);
        for mu in 0..4 {
            for nu in 0..4 {
                assert_eq!(t.get(mu, nu) + t.get(nu, mu), 0.0);
            }
        }
    }

    #[test]
    fn pure_electric_force() {
        let f = AntisymTensor2::faraday([1.0, 0.0, 0.0], [0.0; 3]);
        let j = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(spatial_force(&f, &j), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn pure_magnetic_force() {
        let f = AntisymTensor2::faraday([0.0; 3], [0.0, 0.0, 1.0]);
        let j = FourVector::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(spatial_force(&f, &j), [0.0, -1.0, 0.0]);
        assert_eq!(cross([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]), [0.0, -1.0, 0.0]);
    }

    #[test]
    fn zero_current_zero_force() {
        let f = AntisymTensor2::faraday([1.0, 2.0, 3.0], [4.0, 5.0, 6.0]);
        let zero = FourVector::new(0.0, 0.0, 0.0, 0.0);
        assert_eq!(force_density(&f, &zero), zero);
    }

    #[test]
    fn time_component_is_minus_work_rate() {
        // f_0 = E·j⃗ enters with the lowered sign convention.
        let e = [0.3, -1.2, 2.0];
        let f = AntisymTensor2::faraday(e, [0.7, 0.1, -0.4]);
        let j = FourVector::new(0.5, 1.0, 2.0, -3.0);
        let f0 = force_density(&f, &j).t;
        let ej = e[0] * j.x + e[1] * j.y + e[2] * j.z;
        assert!((f0 - ej).abs() < 1e-15);
    }

    #[test]
    fn rest_frame_dipole_is_alpha_e() {
        let f = AntisymTensor2::faraday([1.0, -2.0, 0.5], [3.0, 1.0, 1.0]);
        let u = four_velocity([0.0; 3]).unwrap();
        let d = induced_dipole(2.0, &f, &u);
        assert_eq!(d, FourVector::new(0.0, 2.0, -4.0, 1.0));
    }

    #[test]
    fn feynman_trace() {
        let g = GreenMatrix::feynman(Complex64::new(2.0, 0.0));
        assert!((g.trace() - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }
}
