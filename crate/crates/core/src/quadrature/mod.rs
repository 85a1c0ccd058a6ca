//! Adaptive Gauss-Kronrod integration over finite and semi-infinite
//! intervals, nested 2D integration, and a fixed-grid midpoint oracle.
//!
//! Subdivision is driven by a deterministic error queue (largest scaled
//! error first, leftmost on ties) and panels are summed in domain order, so
//! a given integrand and spec always produce bit-identical results.

mod oracle;
mod rule;

use std::ops::Add;

pub use oracle::{riemann_oracle, riemann_oracle_vec, GridAxis};

pub use rule::RULE_POINTS;

use rule::{gk15, PanelEstimate};

/// What the relative tolerance is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelativeTo {
    /// |∫f|, the usual choice.
    #[default]
    Value,
    /// ∫|f|. Useful on inner axes of a nested integral whose outer
    /// integrand changes sign, where the error should be shared out in
    /// proportion to each region's contribution.
    Magnitude,
}

/// Tolerances and subdivision budget for one adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub relative_to: RelativeTo,
    /// Points where the integrand is known to be non-smooth. No panel ever
    /// straddles one of them.
    pub breakpoints: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-300,
            max_subdivisions: 200,
            relative_to: RelativeTo::Value,
            breakpoints: Vec::new(),
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self, String> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(format!("relative tolerance must be positive, got {rel_tol}"));
        }
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(format!("absolute tolerance must be positive, got {abs_tol}"));
        }
        if max_subdivisions == 0 {
            return Err("at least one subdivision is required".into());
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            relative_to: RelativeTo::Value,
            breakpoints: Vec::new(),
        })
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints = points.into_iter().collect();
        self
    }

    /// Same tolerances scaled for use on an inner axis of a nested integral.
    pub fn inner(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            max_subdivisions: self.max_subdivisions,
            relative_to: self.relative_to,
            breakpoints: Vec::new(),
        }
    }

    pub fn relative_to(mut self, base: RelativeTo) -> Self {
        self.relative_to = base;
        self
    }

    fn tolerance(&self, value: f64, magnitude: f64) -> f64 {
        let base = match self.relative_to {
            RelativeTo::Value => value.abs(),
            RelativeTo::Magnitude => magnitude,
        };
        self.abs_tol.max(self.rel_tol * base)
    }
}

/// Outcome of a scalar integration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntegralResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl Add for IntegralResult {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
            converged: self.converged && o.converged,
        }
    }
}

/// Outcome of a vector-valued integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecIntegral<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    /// Estimate of ∫|f| per component.
    pub abs: [f64; N],
    pub evaluations: usize,
    pub converged: bool,
}

impl<const N: usize> VecIntegral<N> {
    /// `[values, errors, ∫|f|]`, the integrand layout expected by
    /// [`integrate_nested`]. `M` must equal `3N`.
    pub fn columns<const M: usize>(&self) -> [f64; M] {
        assert_eq!(3 * N, M);
        let mut out = [0.0; M];
        out[..N].copy_from_slice(&self.value);
        out[N..2 * N].copy_from_slice(&self.error);
        out[2 * N..].copy_from_slice(&self.abs);
        out
    }

    /// Add another integral over an adjacent or complementary domain.
    pub fn merge(mut self, other: &Self) -> Self {
        for i in 0..N {
            self.value[i] += other.value[i];
            self.error[i] += other.error[i];
            self.abs[i] += other.abs[i];
        }
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
        self
    }

    /// Multiply value, error and ∫|f| by a positive constant.
    pub fn scaled(mut self, factor: f64) -> Self {
        for i in 0..N {
            self.value[i] *= factor;
            self.error[i] *= factor.abs();
            self.abs[i] *= factor.abs();
        }
        self
    }

    pub fn component(&self, i: usize) -> IntegralResult {
        IntegralResult {
            value: self.value[i],
            error: self.error[i],
            evaluations: self.evaluations,
            converged: self.converged,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    est: PanelEstimate<N>,
}

/// Adaptive integration of a vector-valued function over the finite
/// interval [a, b]. Only the first `tracked` components drive subdivision
/// and convergence; the rest ride along (used for carrying inner error
/// estimates through nested integrals).
pub fn integrate_vec<const N: usize, F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    tracked: usize,
) -> VecIntegral<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let (panels, evaluations, converged) = adaptive(f, a, b, spec, Layout::Plain { tracked });
    // Panels are kept in domain order; sum in that order.
    let mut out = VecIntegral {
        value: [0.0; N],
        error: [0.0; N],
        abs: [0.0; N],
        evaluations,
        converged,
    };
    for p in &panels {
        for c in 0..N {
            out.value[c] += p.est.value[c];
            out.error[c] += p.est.error[c];
            out.abs[c] += p.est.abs[c];
        }
    }
    out
}

/// How the components of a vector integrand are used.
#[derive(Debug, Clone, Copy)]
enum Layout {
    /// The first `tracked` components drive convergence.
    Plain { tracked: usize },
    /// Columns are `[values; n] [inner errors; n] [inner ∫|f|; n]`.
    Nested { n: usize },
}

impl Layout {
    fn tracked(self) -> usize {
        match self {
            Layout::Plain { tracked } => tracked,
            Layout::Nested { n } => n,
        }
    }
}

fn adaptive<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    layout: Layout,
) -> (Vec<Panel<N>>, usize, bool)
where
    F: FnMut(f64) -> [f64; N],
{
    let tracked = layout.tracked();
    assert!(tracked <= N);
    if let Layout::Nested { n } = layout {
        assert_eq!(3 * n, N);
    }
    let mut edges = vec![a];
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut inner: Vec<f64> = spec
        .breakpoints
        .iter()
        .copied()
        .filter(|&p| p > lo && p < hi)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    if a > b {
        inner.reverse();
    }
    edges.extend(inner);
    edges.push(b);

    let mut panels: Vec<Panel<N>> = edges
        .windows(2)
        .filter(|w| w[0] != w[1])
        .map(|w| Panel {
            a: w[0],
            b: w[1],
            est: gk15(&mut f, w[0], w[1]),
        })
        .collect();
    let mut evaluations = panels.len() * RULE_POINTS;

    let converged = loop {
        let mut total = [0.0; N];
        let mut err = [0.0; N];
        let mut abs = [0.0; N];
        for p in &panels {
            for c in 0..N {
                total[c] += p.est.value[c];
                err[c] += p.est.error[c];
                abs[c] += p.est.abs[c];
            }
        }
        // Allowed error per component: the requested tolerance, or the
        // roundoff floor when the integrand cancels to below it.
        let limit: Vec<f64> = (0..tracked)
            .map(|c| {
                let scale = match layout {
                    Layout::Plain { .. } => abs[c],
                    Layout::Nested { n } => abs[c].max(total[2 * n + c]),
                };
                spec.tolerance(total[c], scale).max(100.0 * f64::EPSILON * scale)
            })
            .collect();
        let inner_err = |c: usize| match layout {
            Layout::Plain { .. } => 0.0,
            Layout::Nested { n } => total[n + c].abs(),
        };
        if (0..tracked).all(|c| err[c] + inner_err(c) <= limit[c]) {
            break true;
        }
        // Outer axis resolved but inner errors too large: refining here
        // cannot help.
        if (0..tracked).all(|c| err[c] <= 0.1 * limit[c] || err[c] + inner_err(c) <= limit[c]) {
            break false;
        }
        if panels.len() >= spec.max_subdivisions.max(edges.len() - 1) {
            break false;
        }
        // Worst panel by error relative to the component limit.
        let mut worst = 0;
        let mut worst_score = f64::NEG_INFINITY;
        for (i, p) in panels.iter().enumerate() {
            let score = (0..tracked)
                .map(|c| p.est.error[c] / limit[c].max(f64::MIN_POSITIVE))
                .fold(0.0, f64::max);
            if score > worst_score {
                worst_score = score;
                worst = i;
            }
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid == pa || mid == pb {
            break false;
        }
        let left = Panel {
            a: pa,
            b: mid,
            est: gk15(&mut f, pa, mid),
        };
        let right = Panel {
            a: mid,
            b: pb,
            est: gk15(&mut f, mid, pb),
        };
        evaluations += 2 * RULE_POINTS;
        panels[worst] = left;
        panels.insert(worst + 1, right);
    };
    (panels, evaluations, converged)
}

/// Outer integration of a nested integral. The integrand returns, for each
/// of `N` components, the inner value, the inner error estimate and the
/// inner ∫|f| (see [`VecIntegral::columns`]), so `M` must equal `3N`.
/// Inner errors are integrated and added to the outer error, and the
/// roundoff floor is taken from the innermost ∫|f|. The evaluation count
/// covers the outer axis only.
pub fn integrate_nested<const N: usize, const M: usize, F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> VecIntegral<N>
where
    F: FnMut(f64) -> [f64; M],
{
    let (panels, evaluations, converged) = adaptive(f, a, b, spec, Layout::Nested { n: N });
    let mut sum = [0.0; M];
    let mut err = [0.0; N];
    let mut abs = [0.0; N];
    for p in &panels {
        for c in 0..M {
            sum[c] += p.est.value[c];
        }
        for c in 0..N {
            err[c] += p.est.error[c];
            abs[c] += p.est.abs[c];
        }
    }
    VecIntegral {
        value: std::array::from_fn(|c| sum[c]),
        error: std::array::from_fn(|c| err[c] + sum[N + c].abs()),
        abs: std::array::from_fn(|c| abs[c].max(sum[2 * N + c])),
        evaluations,
        converged,
    }
}

/// Map x = a + t/(1 − t) taking [0, 1) onto [a, ∞).
fn semi_infinite<const N: usize, F>(mut f: F, a: f64) -> impl FnMut(f64) -> [f64; N]
where
    F: FnMut(f64) -> [f64; N],
{
    move |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let jac = 1.0 / (s * s);
        let mut v = f(x);
        for c in v.iter_mut() {
            *c *= jac;
        }
        v
    }
}

/// Integrate a scalar function over [a, b]; `b` may be `f64::INFINITY`, in
/// which case the algebraic map t = (x − a)/(1 + x − a) is applied.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> IntegralResult
where
    F: FnMut(f64) -> f64,
{
    scalar(f, a, b, spec).component(0)
}

fn scalar<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> VecIntegral<1>
where
    F: FnMut(f64) -> f64,
{
    if b == f64::INFINITY {
        let mapped = QuadratureSpec {
            breakpoints: spec
                .breakpoints
                .iter()
                .filter(|&&p| p > a)
                .map(|&p| (p - a) / (1.0 + p - a))
                .collect(),
            ..spec.clone()
        };
        integrate_vec(semi_infinite(move |x| [f(x)], a), 0.0, 1.0, &mapped, 1)
    } else {
        integrate_vec(|x| [f(x)], a, b, spec, 1)
    }
}

/// Nested integral ∫_a^b dx ∫_{c(x)}^{d(x)} dy f(x, y). The inner axis uses
/// a tenth of the outer tolerance and its error is integrated alongside
/// the value so that the reported error covers both axes.
pub fn integrate_2d_nested<F, D>(
    f: F,
    outer: (f64, f64),
    inner: D,
    spec: &QuadratureSpec,
) -> IntegralResult
where
    F: Fn(f64, f64) -> f64,
    D: Fn(f64) -> (f64, f64),
{
    let inner_spec = spec.inner(0.1);
    let mut inner_evals = 0usize;
    let outer_fn = |x: f64| -> [f64; 3] {
        let (c, d) = inner(x);
        let r = scalar(|y| f(x, y), c, d, &inner_spec);
        inner_evals += r.evaluations;
        r.columns()
    };
    let mut res = if outer.1 == f64::INFINITY {
        integrate_nested::<1, 3, _>(semi_infinite(outer_fn, outer.0), 0.0, 1.0, spec)
    } else {
        integrate_nested::<1, 3, _>(outer_fn, outer.0, outer.1, spec)
    };
    res.evaluations += inner_evals;
    res.component(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-12, 1e-14, 500).unwrap()
    }

    #[test]
    fn polynomial() {
        let r = integrate_1d(|x| x * x, 0.0, 1.0, &spec());
        assert!(r.converged);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_1d(|x| (-x).exp(), 0.0, f64::INFINITY, &spec());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn damped_oscillation() {
        let r = integrate_1d(|x| (-x).exp() * (10.0 * x).cos(), 0.0, f64::INFINITY, &spec());
        assert!((r.value - 1.0 / 101.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn reversed_interval() {
        let r = integrate_1d(|x| x, 1.0, 0.0, &spec());
        assert!((r.value + 0.5).abs() < 1e-14);
    }

    #[test]
    fn kink_at_breakpoint() {
        let s = spec().with_breakpoints([0.3]);
        let r = integrate_1d(|x| (x - 0.3).abs().sqrt(), 0.0, 1.0, &s);
        let exact = 2.0 / 3.0 * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!((r.value - exact).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn panels_never_straddle_breakpoints() {
        let hints = [0.1, 0.37, 0.5, 0.81];
        let s = spec().with_breakpoints(hints);
        let (panels, _, _) = adaptive(|x| [(1.0 / (x + 0.01)).sin()], 0.0, 1.0, &s, Layout::Plain { tracked: 1 });
        assert!(panels.len() > 10);
        for p in &panels {
            for h in hints {
                assert!(!(p.a < h && h < p.b), "panel [{}, {}] straddles {h}", p.a, p.b);
            }
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let s = QuadratureSpec::new(1e-14, 1e-300, 2).unwrap();
        let r = integrate_1d(|x| (1.0 / x).sin() / x.sqrt(), 0.0, 1.0, &s);
        assert!(!r.converged);
        assert!(r.error > 0.0);
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 7.0).sin() * (-x * x).exp();
        let a = integrate_1d(f, -3.0, 4.0, &spec());
        let b = integrate_1d(f, -3.0, 4.0, &spec());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn nested_examples() {
        let s = QuadratureSpec::new(1e-10, 1e-14, 200).unwrap();
        let r = integrate_2d_nested(|x, y| x * y, (0.0, 1.0), |_| (0.0, 1.0), &s);
        assert!((r.value - 0.25).abs() < 1e-12);
        let r = integrate_2d_nested(|r, _| r, (0.0, 1.0), |_| (0.0, 2.0 * PI), &s);
        assert!((r.value - PI).abs() < 1e-12);
        let r = integrate_2d_nested(
            |x, y| (-x).exp() * (-y).exp(),
            (0.0, f64::INFINITY),
            |_| (0.0, f64::INFINITY),
            &s,
        );
        assert!((r.value - 1.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureSpec::new(1e-6, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-6, 1e-10, 0).is_err());
    }
}
