//! Force results shared by the blackbody and surface integrators.

use crate::error::ForceError;
use crate::quadrature::{IntegralResult, QuadratureSpec, VecIntegral};

/// One force component split into its field-fluctuation and
/// dipole-fluctuation pieces.
///
/// Each piece on its own contains a zero-point term that does not converge.
/// The field piece is reported with the zero-point part of coth(ω/2T_F)
/// removed; that part is carried by the dipole piece, where it cancels
/// against the dipole's own zero-point term. The sum is unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ForceComponent {
    pub field: IntegralResult,
    pub dipole: IntegralResult,
}

impl ForceComponent {
    pub fn total(&self) -> f64 {
        self.field.value + self.dipole.value
    }

    pub fn total_error(&self) -> f64 {
        self.field.error + self.dipole.error
    }

    pub fn converged(&self) -> bool {
        self.field.converged && self.dipole.converged
    }

    pub(crate) fn zero() -> Self {
        let z = IntegralResult {
            converged: true,
            ..IntegralResult::default()
        };
        Self { field: z, dipole: z }
    }
}

/// Force pieces computed for one scenario. `power` (the time component) is
/// filled for blackbody runs, `normal` for surface runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceBreakdown {
    /// Component along the velocity (x).
    pub friction: ForceComponent,
    /// Component normal to the surface (z).
    pub normal: Option<ForceComponent>,
    /// Time component F_0.
    pub power: Option<ForceComponent>,
    pub evaluations: usize,
}

impl ForceBreakdown {
    pub fn converged(&self) -> bool {
        self.friction.converged()
            && self.normal.is_none_or(|c| c.converged())
            && self.power.is_none_or(|c| c.converged())
    }

    /// Turn a non-converged breakdown into an accuracy error carrying it.
    pub(crate) fn check(self) -> Result<Self, ForceError> {
        let parts = [
            ("F_x^(1)", Some(self.friction.field)),
            ("F_x^(2)", Some(self.friction.dipole)),
            ("F_z^(1)", self.normal.map(|c| c.field)),
            ("F_z^(2)", self.normal.map(|c| c.dipole)),
            ("F_0^(1)", self.power.map(|c| c.field)),
            ("F_0^(2)", self.power.map(|c| c.dipole)),
        ];
        for (name, part) in parts {
            if let Some(r) = part {
                if !r.converged {
                    return Err(ForceError::Accuracy {
                        component: name,
                        result: r,
                        best: Box::new(self),
                    });
                }
            }
        }
        Ok(self)
    }
}

/// Scalar view of component `i` of a vector result.
pub(crate) fn component<const N: usize>(r: &VecIntegral<N>, i: usize, spec: &QuadratureSpec) -> IntegralResult {
    let tol = spec
        .abs_tol
        .max(spec.rel_tol * r.value[i].abs())
        .max(100.0 * f64::EPSILON * r.abs[i]);
    IntegralResult {
        value: r.value[i],
        error: r.error[i],
        evaluations: r.evaluations,
        converged: r.converged || r.error[i] <= tol,
    }
}
