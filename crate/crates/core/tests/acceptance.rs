//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radfric_core::covariant::run_identity_suite;
use radfric_core::materials::fresnel;
use radfric_core::quadrature::{integrate_2d_nested, riemann_oracle_vec, GridAxis};
use radfric_core::*;

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn run(id: usize, title: &str, budget: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = out.passed && in_time;
    let verdict = if passed { "PASS" } else { "FAIL" };
    let late = if in_time { String::new() } else { format!(" over budget {budget:?}") };
    println!("{verdict} [{id:>2}] {title}: {} ({elapsed:.2?}{late})", out.detail);
    passed
}

fn lorentz(damping: f64) -> LorentzOscillator {
    LorentzOscillator::new(1.0, 1.0, damping).unwrap()
}

fn spec(rel: f64) -> QuadratureSpec {
    QuadratureSpec::new(rel, 1e-300, 200).unwrap()
}

fn identity_check(name: &str) -> Outcome {
    let report = run_identity_suite(SEED).expect("identity suite");
    let c = report.get(name).expect("check present");
    outcome(c.passed(), c.to_string())
}

fn poles() -> Outcome {
    let mut worst = 0.0f64;
    for n in [1.5, 2.0, 4.0] {
        let m = SurfaceMedium::new(n).unwrap();
        for kpar in [0.1, 1.0, 7.0] {
            let kz = Complex64::new(0.0, kpar);
            let rp = fresnel(PolarizationLabel::P, &m, kz, kpar).unwrap();
            let rk = fresnel(PolarizationLabel::K, &m, kz, kpar).unwrap();
            let want = (n * n - 1.0) / (n * n + 1.0);
            worst = worst.max((rp - want).norm()).max((rk + want).norm());
        }
    }
    outcome(worst < 1e-14, format!("max deviation {worst:.1e}"))
}

fn equilibrium_null() -> Outcome {
    let bb = BlackbodyScenario::new(lorentz(0.1), 0.0, 0.5, 0.5).unwrap();
    let fb = blackbody_force(&bb, &spec(1e-8)).unwrap().friction.total();
    let sf = SurfaceScenario::new(lorentz(0.1), 0.0, 1.0, SurfaceMedium::new(2.0).unwrap(), 0.5, 0.5)
        .unwrap();
    let fs = surface_force(&sf, &spec(1e-8)).unwrap().friction.total();
    outcome(
        fb.abs() < 1e-10 && fs.abs() < 1e-10,
        format!("blackbody F_x = {fb:.1e}, surface F_x = {fs:.1e}"),
    )
}

fn drag_antisymmetry() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for v in [0.1, 0.3, 0.6] {
        let bb = |v| {
            let s = BlackbodyScenario::new(lorentz(0.1), v, 0.5, 0.5).unwrap();
            blackbody_force(&s, &spec(1e-6)).unwrap().friction
        };
        let sf = |v| {
            let s = SurfaceScenario::new(lorentz(0.1), v, 1.0, SurfaceMedium::new(2.0).unwrap(), 0.5, 0.5)
                .unwrap();
            surface_force(&s, &spec(1e-3)).unwrap().friction
        };
        for (name, plus, minus) in [("blackbody", bb(v), bb(-v)), ("surface", sf(v), sf(-v))] {
            let sum = (plus.total() + minus.total()).abs();
            let allowed = plus.total_error() + minus.total_error();
            let pass = plus.total() < 0.0 && sum <= allowed;
            ok &= pass;
            lines.push(format!("{name} v={v}: {:.4e} |sum| {sum:.1e} <= {allowed:.1e}", plus.total()));
        }
    }
    outcome(ok, lines.join("; "))
}

/// Folded blackbody density assembled from four-vectors with the full
/// coth factors: (F_x, F_0) per dω dc.
fn blackbody_reference(s: &BlackbodyScenario, omega: f64, c: f64) -> [f64; 2] {
    let u = four_velocity([s.velocity, 0.0, 0.0]).unwrap();
    let k = FourVector::new(omega, omega * c, omega * (1.0 - c * c).sqrt(), 0.0);
    let uk = u.dot(&k);
    let coth = |x: f64, t: f64| if t == 0.0 { x.signum() } else { 1.0 / (x / (2.0 * t)).tanh() };
    let diff = coth(omega, s.temp_field) - coth(uk, s.temp_particle);
    let w = omega * uk * uk * s.particle.polarizability(uk).im * diff / (4.0 * PI * PI * u.t);
    [w * k.x, w * k.t]
}

fn blackbody_oracle(s: &BlackbodyScenario) -> [f64; 2] {
    let g = s.gamma();
    let v = s.velocity.abs();
    let lo = 1.0 / (g * (1.0 + v));
    let hi = 1.0 / (g * (1.0 - v));
    let edges = [1e-9, 0.5 * lo, 2.0 * hi, s.frequency_cutoff()];
    let mut total = [0.0; 2];
    for w in edges.windows(2) {
        let part = riemann_oracle_vec(
            |x| blackbody_reference(s, x[0], x[1]),
            &[GridAxis::new(w[0], w[1], 400), GridAxis::new(-1.0, 1.0, 400)],
        );
        total[0] += part[0];
        total[1] += part[1];
    }
    total
}

/// Unfolded surface density on the full (ω, k_par) space, summed over a
/// grid in (ω, r, ψ) where r is the vacuum |k_z|. Returns F_x and the
/// temperature-dependent part of F_z.
fn surface_oracle(s: &SurfaceScenario, omega_edges: &[f64]) -> [f64; 2] {
    let cold = SurfaceScenario {
        temp_particle: 0.0,
        temp_field: 0.0,
        ..*s
    };
    let density = |omega: f64, k: f64, psi: f64, jac: f64| -> [f64; 2] {
        let kp = [k * psi.cos(), k * psi.sin()];
        match (surface_integrand(s, omega, kp), surface_integrand(&cold, omega, kp)) {
            // Both signs of ω contribute equally.
            (Ok(a), Ok(b)) => [2.0 * jac * a.friction(), 2.0 * jac * (a.normal() - b.normal())],
            _ => [0.0; 2],
        }
    };
    let mut total = [0.0; 2];
    for w in omega_edges.windows(2) {
        let omega_axis = GridAxis::new(w[0], w[1], 400);
        let psi_axis = GridAxis::new(0.0, 2.0 * PI, 64);
        // Propagating: q = xω, k dk = q dq.
        let prop = riemann_oracle_vec(
            |p| {
                let q = p[1] * p[0];
                density(p[0], (p[0] * p[0] - q * q).sqrt(), p[2], q * p[0])
            },
            &[omega_axis, GridAxis::new(0.0, 1.0, 400), psi_axis],
        );
        for c in 0..2 {
            total[c] += prop[c];
        }
        // Evanescent: k dk = κ dκ.
        for kappa in [0.0, 2.0, s.kappa_cutoff()].windows(2) {
            let evan = riemann_oracle_vec(
                |p| density(p[0], p[0].hypot(p[1]), p[2], p[1]),
                &[omega_axis, GridAxis::new(kappa[0], kappa[1], 400), psi_axis],
            );
            for c in 0..2 {
                total[c] += evan[c];
            }
        }
    }
    total
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    let mut record = |label: String, adaptive: [f64; 2], oracle: [f64; 2]| {
        let dev = (0..2).map(|c| ((adaptive[c] - oracle[c]) / oracle[c]).abs()).fold(0.0, f64::max);
        worst = worst.max(dev);
        lines.push(format!("{label} {dev:.1e}"));
    };
    for (v, ta, tf) in [(0.1, 0.5, 0.5), (0.5, 1.0, 0.5)] {
        let s = BlackbodyScenario::new(lorentz(0.1), v, ta, tf).unwrap();
        let f = blackbody_force(&s, &spec(1e-8)).unwrap();
        record(
            format!("blackbody v={v}"),
            [f.friction.total(), f.power.unwrap().total()],
            blackbody_oracle(&s),
        );
    }
    let surfaces = [
        (0.1, 1.0, SurfaceMedium::new(2.0).unwrap(), 0.1, 0.5, 0.5),
        (0.3, 1.0, SurfaceMedium::new(1.5).unwrap(), 0.2, 0.3, 0.3),
        (0.2, 1.0, SurfaceMedium::new(3.0).unwrap(), 0.1, 0.6, 0.3),
    ];
    for (v, z, m, damping, ta, tf) in surfaces {
        let s = SurfaceScenario::new(lorentz(damping), v, z, m, ta, tf).unwrap();
        let cold = SurfaceScenario {
            temp_particle: 0.0,
            temp_field: 0.0,
            ..s
        };
        let hot = surface_force(&s, &spec(1e-6)).unwrap();
        let zero = surface_force(&cold, &spec(1e-6)).unwrap();
        let adaptive = [
            hot.friction.total(),
            hot.normal.unwrap().total() - zero.normal.unwrap().total(),
        ];
        let edges = [0.0, 0.7, 1.4, 4.0, s.frequency_cutoff()];
        record(format!("surface v={v}"), adaptive, surface_oracle(&s, &edges));
    }
    outcome(worst < 1e-3, format!("worst relative deviation {worst:.1e} ({})", lines.join(", ")))
}

/// Zero-temperature force at rest from the imaginary-frequency
/// reflection formula, written in (ξ, κ) with κ ≥ ξ.
fn casimir_polder_oracle(particle: &LorentzOscillator, n: f64, z: f64) -> f64 {
    let n2 = n * n;
    let reach = 20.0 / z;
    let (a0, w0, g) = (particle.alpha0(), particle.omega0(), particle.damping());
    let f = |xi: f64, kappa: f64| {
        let alpha = a0 * w0 * w0 / (w0 * w0 + xi * xi + g * xi);
        let k2 = (kappa * kappa - xi * xi).max(0.0);
        let k1 = (kappa * kappa + (n2 - 1.0) * xi * xi).sqrt();
        let rs = (kappa - k1) / (kappa + k1);
        let rp = (n2 * kappa - k1) / (n2 * kappa + k1);
        let bracket = xi * xi * rs - (xi * xi + 2.0 * k2) * rp;
        alpha * kappa * (-2.0 * kappa * z).exp() * bracket / (4.0 * PI * PI)
    };
    integrate_2d_nested(f, (0.0, reach), |xi| (xi, xi + reach), &spec(1e-10)).value
}

fn casimir_polder() -> Outcome {
    let particle = lorentz(0.01);
    let n = 2.0;
    let zs: Vec<f64> = (0..7).map(|i| 10f64 * 10f64.powf(i as f64 / 6.0)).collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut worst = 0.0f64;
    for &z in &zs {
        let s = SurfaceScenario::new(particle, 0.0, z, SurfaceMedium::new(n).unwrap(), 0.0, 0.0).unwrap();
        let f = surface_force(&s, &spec(1e-9)).unwrap().normal.unwrap().total();
        let o = casimir_polder_oracle(&particle, n, z);
        worst = worst.max((f / o - 1.0).abs());
        xs.push(z.ln());
        ys.push(f.abs().ln());
    }
    let m = xs.len() as f64;
    let (sx, sy) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - sx) * (y - sy)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - sx).powi(2)).sum();
    let slope = sxy / sxx;
    outcome(
        (slope + 5.0).abs() <= 0.1 && worst < 0.01,
        format!("slope {slope:.4}, worst oracle deviation {worst:.1e}"),
    )
}

fn lossless_evanescent_null() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1.1..4.0);
        let v = rng.gen_range(-0.9..0.9);
        let s = SurfaceScenario::new(
            lorentz(rng.gen_range(0.01..1.0)),
            v,
            rng.gen_range(0.1..5.0),
            SurfaceMedium::new(n).unwrap(),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
        )
        .unwrap();
        let omega: f64 = rng.gen_range(-3.0..3.0);
        let k = n * omega.abs() * rng.gen_range(1.0001..4.0) + rng.gen_range(0.0..1.0);
        let psi = rng.gen_range(0.0..2.0 * PI);
        let d = surface_integrand(&s, omega, [k * psi.cos(), k * psi.sin()]).unwrap();
        worst = worst.max(d.s.friction().abs()).max(d.p.friction().abs());
    }
    outcome(worst == 0.0, format!("largest |F_x density| {worst:.1e} over 100 points"))
}

fn small_velocity_linearity() -> Outcome {
    let coefficient = |v: f64| {
        let s = BlackbodyScenario::new(lorentz(0.1), v, 0.5, 0.5).unwrap();
        blackbody_force(&s, &spec(1e-9)).unwrap().friction.total() / v
    };
    let c: Vec<f64> = [1e-4, 2e-4, 4e-4].into_iter().map(coefficient).collect();
    let spread = c.iter().map(|x| (x / c[0] - 1.0).abs()).fold(0.0, f64::max);
    outcome(
        spread < 0.01 && c.iter().all(|x| *x < 0.0),
        format!("F_x/v = {:.6e}, {:.6e}, {:.6e}; spread {spread:.1e}", c[0], c[1], c[2]),
    )
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "tensor identity", s(1), || identity_check("dipole kernel identity")),
        run(2, "gauge cancellation", s(1), || identity_check("gauge cancellation")),
        run(3, "pole residues", s(1), poles),
        run(4, "force density", s(1), || identity_check("lorentz force density")),
        run(5, "equilibrium null", s(10), equilibrium_null),
        run(6, "drag sign and antisymmetry", s(60), drag_antisymmetry),
        run(7, "oracle equivalence", s(300), oracle_equivalence),
        run(8, "Casimir-Polder limit", s(300), casimir_polder),
        run(9, "lossless evanescent null", s(1), lossless_evanescent_null),
        run(10, "small-velocity linearity", s(60), small_velocity_linearity),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
