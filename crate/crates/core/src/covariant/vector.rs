//! Contravariant Minkowski four-vectors, signature (+,-,-,-).

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::PhysicsError;

/// Diagonal of the metric g_{μν} = g^{μν}.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Contravariant components `(t, x, y, z)`.
///
/// The component type is generic so that the same algebra serves real
/// kinematics and light-cone vectors whose `z` component is complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector<T = f64> {
    pub t: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

/// Four-vector with complex components.
pub type CFourVector = FourVector<Complex64>;

impl<T> FourVector<T> {
    pub const fn new(t: T, x: T, y: T, z: T) -> Self {
        Self { t, x, y, z }
    }
}

impl<T: Copy> FourVector<T> {
    pub fn components(&self) -> [T; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_components(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl<T> FourVector<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    /// Minkowski product a·b = a_t b_t − a⃗·b⃗.
    pub fn dot(&self, other: &Self) -> T {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }
}

impl<T: Copy + Neg<Output = T>> FourVector<T> {
    /// Covariant components a_μ = g_{μν} a^ν.
    pub fn lower(&self) -> [T; 4] {
        [self.t, -self.x, -self.y, -self.z]
    }

    /// Reflection z → −z of the spatial part (the wavevector of the
    /// mirror-image wave).
    pub fn reflected(&self) -> Self {
        Self::new(self.t, self.x, self.y, -self.z)
    }
}

impl FourVector<f64> {
    pub fn to_complex(&self) -> CFourVector {
        FourVector::new(
            Complex64::from(self.t),
            Complex64::from(self.x),
            Complex64::from(self.y),
            Complex64::from(self.z),
        )
    }

    /// Largest absolute component, used to scale residuals.
    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl CFourVector {
    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }
}

impl<T: Copy> Index<usize> for FourVector<T> {
    type Output = T;

    fn index(&self, mu: usize) -> &T {
        match mu {
            0 => &self.t,
            1 => &self.x,
            2 => &self.y,
            3 => &self.z,
            _ => panic!("four-vector index {mu} out of range"),
        }
    }
}

impl<T: Copy + Add<Output = T>> Add for FourVector<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Copy + Sub<Output = T>> Sub for FourVector<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Copy + Neg<Output = T>> Neg for FourVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl<T: Copy + Mul<Output = T>> Mul<T> for FourVector<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Zero + Copy> Zero for FourVector<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.t.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

/// Minkowski product of two real four-vectors.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.dot(b)
}

/// Lorentz factor γ = (1 − |v|²)^{-1/2}.
pub fn lorentz_gamma(speed_squared: f64) -> f64 {
    1.0 / (1.0 - speed_squared).sqrt()
}

/// Four-velocity u = γ(1, v⃗) of a particle with three-velocity `v`.
pub fn four_velocity(v: [f64; 3]) -> Result<FourVector, PhysicsError> {
    let v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if !v2.is_finite() || v2 >= 1.0 {
        return Err(PhysicsError::InvalidVelocity { speed: v2.sqrt() });
    }
    let gamma = lorentz_gamma(v2);
    Ok(FourVector::new(gamma, gamma * v[0], gamma * v[1], gamma * v[2]))
}

/// Frequency u·k seen by an observer with four-velocity `u`.
pub fn doppler_frequency(u: &FourVector, k: &FourVector) -> f64 {
    u.dot(k)
}
