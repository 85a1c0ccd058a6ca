//! Sweep execution and output files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use radfric_core::covariant::{run_identity_suite, IdentityReport};
use radfric_core::{
    blackbody_force, surface_force, BlackbodyScenario, ForceBreakdown, ForceError, LorentzOscillator,
    PhysicsError, QuadratureSpec, SurfaceMedium, SurfaceScenario,
};
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{Mode, RunConfig};
use crate::units::{Scales, BOLTZMANN, HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid quadrature settings: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("cannot build thread pool: {0}")]
    Threads(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// Command-line overrides.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    pub tolerance: Option<f64>,
}

/// One sweep point in configured units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub velocity: f64,
    pub distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub point: SweepPoint,
    /// In natural units; `None` when the point could not be evaluated.
    pub breakdown: Option<ForceBreakdown>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunOutput {
    Forces(Vec<PointResult>),
    Identities(IdentityReport),
}

impl RunOutput {
    pub fn all_converged(&self) -> bool {
        match self {
            RunOutput::Forces(rows) => rows.iter().all(|r| r.converged),
            RunOutput::Identities(report) => report.all_passed(),
        }
    }
}

pub fn sweep_points(config: &RunConfig) -> Vec<SweepPoint> {
    let vs = config.velocity.values();
    match &config.distance {
        None => vs
            .into_iter()
            .map(|velocity| SweepPoint {
                velocity,
                distance: None,
            })
            .collect(),
        Some(z) => {
            let zs = z.values();
            vs.iter()
                .flat_map(|&velocity| {
                    zs.iter().map(move |&z| SweepPoint {
                        velocity,
                        distance: Some(z),
                    })
                })
                .collect()
        }
    }
}

fn evaluate(
    config: &RunConfig,
    scales: &Scales,
    particle: &LorentzOscillator,
    spec: &QuadratureSpec,
    point: SweepPoint,
) -> Result<PointResult, PhysicsError> {
    let v = point.velocity / scales.velocity;
    let ta = config.temp_particle / scales.temperature;
    let tf = config.temp_field / scales.temperature;
    let result = match point.distance {
        None => blackbody_force(&BlackbodyScenario::new(*particle, v, ta, tf)?, spec),
        Some(z) => {
            let medium = if config.index_imag > 0.0 {
                SurfaceMedium::lossy(config.index, config.index_imag)?
            } else {
                SurfaceMedium::new(config.index)?
            };
            let s = SurfaceScenario::new(*particle, v, z / scales.length, medium, ta, tf)?;
            surface_force(&s, spec)
        }
    };
    Ok(match result {
        Ok(b) => PointResult {
            point,
            breakdown: Some(b),
            converged: true,
        },
        Err(ForceError::Accuracy { best, .. }) => PointResult {
            point,
            breakdown: Some(*best),
            converged: false,
        },
        Err(ForceError::Physics(_)) => PointResult {
            point,
            breakdown: None,
            converged: false,
        },
    })
}

/// Run every sweep point. Points are evaluated concurrently; results come
/// back in sweep order.
pub fn execute(config: &RunConfig, options: RunOptions) -> Result<RunOutput, RunError> {
    if config.mode == Mode::Identities {
        return Ok(RunOutput::Identities(run_identity_suite(config.seed)?));
    }
    let rel_tol = options.tolerance.unwrap_or(config.rel_tol);
    let spec = QuadratureSpec::new(rel_tol, config.abs_tol, config.max_subdivisions).map_err(RunError::Quadrature)?;
    let scales = Scales::for_config(config);
    let p = scales.particle_to_natural(&config.particle);
    let particle = LorentzOscillator::new(p.alpha0, p.omega0, p.damping)?;
    let points = sweep_points(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| RunError::Threads(e.to_string()))?;
    let rows = pool.install(|| {
        points
            .par_iter()
            .map(|&pt| evaluate(config, &scales, &particle, &spec, pt))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(RunOutput::Forces(rows))
}

pub fn csv_header(mode: Mode) -> &'static str {
    match mode {
        Mode::Blackbody => "v,F_x1,F_x2,F_x,F_01,F_02,F_0,err_F_x,err_F_0,evaluations,converged",
        Mode::Surface => "v,z,F_x1,F_x2,F_x,F_z1,F_z2,F_z,err_F_x,err_F_z,evaluations,converged",
        Mode::Identities => "check,draws,max_residual,tolerance,passed",
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text for a finished run, with forces in configured units.
pub fn render_csv(config: &RunConfig, output: &RunOutput) -> String {
    let mut out = String::from(csv_header(config.mode));
    out.push('\n');
    match output {
        RunOutput::Identities(report) => {
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.name,
                    c.draws,
                    num(c.max_residual),
                    num(c.tolerance),
                    c.passed()
                ));
            }
        }
        RunOutput::Forces(rows) => {
            let scales = Scales::for_config(config);
            for row in rows {
                let mut fields = vec![num(row.point.velocity)];
                if let Some(z) = row.point.distance {
                    fields.push(num(z));
                }
                let second_scale = if config.mode == Mode::Surface { scales.force } else { scales.power };
                let (values, evaluations) = match &row.breakdown {
                    Some(b) => {
                        let second = b.normal.or(b.power).unwrap_or_default();
                        let f = scales.force;
                        let g = second_scale;
                        (
                            [
                                b.friction.field.value * f,
                                b.friction.dipole.value * f,
                                b.friction.total() * f,
                                second.field.value * g,
                                second.dipole.value * g,
                                second.total() * g,
                                b.friction.total_error() * f,
                                second.total_error() * g,
                            ],
                            b.evaluations,
                        )
                    }
                    None => ([f64::NAN; 8], 0),
                };
                fields.extend(values.iter().map(|x| num(*x)));
                fields.push(evaluations.to_string());
                fields.push(row.converged.to_string());
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
    }
    out
}

/// Sidecar metadata. Contains nothing that varies between identical runs.
pub fn render_metadata(config: &RunConfig, config_text: &str, output: &RunOutput, options: RunOptions) -> String {
    let digest = Sha256::digest(config_text.as_bytes());
    let points = match output {
        RunOutput::Forces(rows) => rows.len(),
        RunOutput::Identities(r) => r.checks.len(),
    };
    let scales = Scales::for_config(config);
    let meta = json!({
        "program": "radfric",
        "version": env!("CARGO_PKG_VERSION"),
        "mode": config.mode.as_str(),
        "config_sha256": format!("{digest:x}"),
        "unit_system": config.units.as_str(),
        "units": match config.units {
            crate::units::UnitSystem::Natural => json!({
                "convention": "hbar = c = eps0 = 1",
                "velocity": "c", "length": "1/frequency", "temperature": "frequency",
                "force": "frequency^2", "power": "frequency^2",
            }),
            crate::units::UnitSystem::Si => json!({
                "velocity": "m/s", "length": "m", "temperature": "K",
                "polarizability": "C m^2/V", "frequency": "rad/s",
                "force": "N", "power": "W",
                "natural_force_unit": scales.force,
                "natural_length_unit": scales.length,
                "constants": {
                    "hbar": HBAR, "c": SPEED_OF_LIGHT, "k_B": BOLTZMANN, "eps0": VACUUM_PERMITTIVITY,
                },
            }),
        },
        "rel_tol": options.tolerance.unwrap_or(config.rel_tol),
        "abs_tol": config.abs_tol,
        "max_subdivisions": config.max_subdivisions,
        "seed": config.seed,
        "rows": points,
        "columns": csv_header(config.mode).split(',').collect::<Vec<_>>(),
        "all_converged": output.all_converged(),
    });
    let mut text = serde_json::to_string_pretty(&meta).expect("metadata is plain JSON");
    text.push('\n');
    text
}

/// Write `<name>.csv` and `<name>.json` into `dir` and return their paths.
pub fn write_outputs(
    dir: &Path,
    config: &RunConfig,
    config_text: &str,
    output: &RunOutput,
    options: RunOptions,
) -> Result<[PathBuf; 2], RunError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let csv = dir.join(format!("{}.csv", config.name));
    let meta = dir.join(format!("{}.json", config.name));
    fs::write(&csv, render_csv(config, output)).map_err(io(&csv))?;
    fs::write(&meta, render_metadata(config, config_text, output, options)).map_err(io(&meta))?;
    Ok([csv, meta])
}
