//! Batch front end for `radfric-core`: configuration parsing, parameter
//! sweeps and CSV output.

pub mod config;
pub mod run;
pub mod units;

pub use config::{parse_config, ConfigError, Mode, ParticleParams, RunConfig, Sweep};
pub use run::{execute, render_csv, render_metadata, write_outputs, PointResult, RunError, RunOptions, RunOutput};
pub use units::{Scales, UnitSystem};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    /// Unreadable file, thread pool or I/O failure.
    pub const RUNTIME: u8 = 1;
    pub const CONFIG: u8 = 2;
    /// A quadrature missed its tolerance or an identity check failed.
    pub const ACCURACY: u8 = 3;
}
