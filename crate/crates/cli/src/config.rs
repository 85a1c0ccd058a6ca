//! Run configuration: a line-oriented `key = value` format with `[section]`
//! headers and `#` comments.
//!
//! ```text
//! mode = surface
//!
//! [particle]
//! alpha0 = 1.0
//! omega0 = 1.0
//! damping = 0.1
//!
//! [motion]
//! v = linspace(0.1, 0.6, 6)
//!
//! [surface]
//! z = geomspace(1, 10, 5)
//! n = 2.0
//!
//! [thermal]
//! T_A = 0.5
//! T_F = 0.5
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::units::UnitSystem;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}` in section [{section}]")]
    UnknownKey {
        line: usize,
        section: String,
        key: String,
    },
    #[error("line {line}: unknown section [{section}]")]
    UnknownSection { line: usize, section: String },
    #[error("line {line}: key `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("missing required key `{key}`")]
    Missing { key: &'static str },
    #[error("invalid value for `{key}`: {reason}")]
    Domain { key: &'static str, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Blackbody,
    Surface,
    Identities,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Blackbody => "blackbody",
            Mode::Surface => "surface",
            Mode::Identities => "identities",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single value or a finite progression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sweep {
    Single(f64),
    Linear { start: f64, stop: f64, count: usize },
    Geometric { start: f64, stop: f64, count: usize },
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Sweep::Single(x) => vec![x],
            Sweep::Linear { start, stop, count } => (0..count)
                .map(|i| {
                    if count == 1 {
                        start
                    } else if i + 1 == count {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (count - 1) as f64
                    }
                })
                .collect(),
            Sweep::Geometric { start, stop, count } => (0..count)
                .map(|i| {
                    if count == 1 {
                        start
                    } else if i + 1 == count {
                        stop
                    } else {
                        start * (stop / start).powf(i as f64 / (count - 1) as f64)
                    }
                })
                .collect(),
        }
    }

    pub fn is_sweep(&self) -> bool {
        !matches!(self, Sweep::Single(_))
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let Some(open) = s.find('(') else {
            return parse_number(s).map(Sweep::Single);
        };
        let name = s[..open].trim();
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| format!("missing `)` in `{s}`"))?;
        let args: Vec<&str> = body.split(',').map(str::trim).collect();
        let [start, stop, count] = args[..] else {
            return Err(format!("{name} takes (start, stop, count), got `{body}`"));
        };
        let start = parse_number(start)?;
        let stop = parse_number(stop)?;
        let count: usize = count
            .parse()
            .map_err(|_| format!("point count `{count}` is not a positive integer"))?;
        if count == 0 {
            return Err("point count must be at least 1".into());
        }
        match name {
            "linspace" => Ok(Sweep::Linear { start, stop, count }),
            "geomspace" => {
                if !(start > 0.0 && stop > 0.0) && !(start < 0.0 && stop < 0.0) {
                    return Err("geomspace needs endpoints of the same sign, both nonzero".into());
                }
                Ok(Sweep::Geometric { start, stop, count })
            }
            other => Err(format!("unknown progression `{other}`; use linspace or geomspace")),
        }
    }
}

fn parse_number(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// Particle parameters in the configured unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleParams {
    pub alpha0: f64,
    pub omega0: f64,
    pub damping: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub particle: ParticleParams,
    pub velocity: Sweep,
    /// Surface mode only.
    pub distance: Option<Sweep>,
    pub index: f64,
    pub index_imag: f64,
    pub temp_particle: f64,
    pub temp_field: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub units: UnitSystem,
    /// Stem of the output files.
    pub name: String,
    pub seed: u64,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("", &["mode"]),
    ("particle", &["alpha0", "omega0", "damping"]),
    ("motion", &["v"]),
    ("surface", &["z", "n", "n_imag"]),
    ("thermal", &["T_A", "T_F"]),
    ("quadrature", &["rel_tol", "abs_tol", "max_subdivisions"]),
    ("output", &["units", "name"]),
    ("identities", &["seed"]),
];

struct Entry {
    line: usize,
    value: String,
}

struct Table {
    entries: Vec<(&'static str, Entry)>,
}

impl Table {
    fn raw(&self, key: &'static str) -> Option<&Entry> {
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, e)| e)
    }

    fn get<T>(&self, key: &'static str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, ConfigError> {
        self.raw(key)
            .map(|e| parse(&e.value).map_err(|reason| ConfigError::Domain { key, reason }))
            .transpose()
    }

    fn require<T>(&self, key: &'static str, parse: impl Fn(&str) -> Result<T, String>) -> Result<T, ConfigError> {
        self.get(key, parse)?.ok_or(ConfigError::Missing { key })
    }
}

fn tokenize(text: &str) -> Result<Table, ConfigError> {
    let mut section = String::new();
    let mut entries: Vec<(&'static str, Entry)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| ConfigError::Syntax {
                line,
                message: format!("unterminated section header `{content}`"),
            })?;
            let name = name.trim();
            if name.is_empty() || !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(ConfigError::UnknownSection {
                    line,
                    section: name.to_string(),
                });
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                message: format!("empty key or value in `{content}`"),
            });
        }
        let allowed = SECTIONS
            .iter()
            .find(|(s, _)| *s == section)
            .map(|(_, keys)| *keys)
            .unwrap_or(&[]);
        let Some(&known) = allowed.iter().find(|k| **k == key) else {
            return Err(ConfigError::UnknownKey {
                line,
                section: section.clone(),
                key: key.to_string(),
            });
        };
        if entries.iter().any(|(k, _)| *k == known) {
            return Err(ConfigError::Duplicate {
                line,
                key: key.to_string(),
            });
        }
        entries.push((
            known,
            Entry {
                line,
                value: value.to_string(),
            },
        ));
    }
    Ok(Table { entries })
}

fn number(s: &str) -> Result<f64, String> {
    parse_number(s)
}

fn check<T: Copy>(key: &'static str, value: T, ok: impl Fn(T) -> bool, reason: &str) -> Result<T, ConfigError> {
    if ok(value) {
        Ok(value)
    } else {
        Err(ConfigError::Domain {
            key,
            reason: reason.to_string(),
        })
    }
}

fn check_sweep(key: &'static str, sweep: Sweep, ok: impl Fn(f64) -> bool, reason: &str) -> Result<Sweep, ConfigError> {
    for x in sweep.values() {
        if !ok(x) {
            return Err(ConfigError::Domain {
                key,
                reason: format!("{x} {reason}"),
            });
        }
    }
    Ok(sweep)
}

/// Parse and validate a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let t = tokenize(text)?;
    let mode = t.require("mode", |s| match s {
        "blackbody" => Ok(Mode::Blackbody),
        "surface" => Ok(Mode::Surface),
        "identities" => Ok(Mode::Identities),
        other => Err(format!("`{other}` is not one of blackbody, surface, identities")),
    })?;
    let units = t
        .get("units", |s| s.parse::<UnitSystem>())?
        .unwrap_or(UnitSystem::Natural);
    let name = t
        .get("name", |s| {
            if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)) {
                Ok(s.to_string())
            } else {
                Err(format!("`{s}` is not a plain file stem"))
            }
        })?
        .unwrap_or_else(|| mode.as_str().to_string());
    let seed = t
        .get("seed", |s| s.parse::<u64>().map_err(|_| format!("`{s}` is not an unsigned integer")))?
        .unwrap_or(0);
    let rel_tol = t.get("rel_tol", number)?.unwrap_or(1e-6);
    let abs_tol = t.get("abs_tol", number)?.unwrap_or(1e-300);
    let max_subdivisions = t
        .get("max_subdivisions", |s| s.parse::<usize>().map_err(|_| format!("`{s}` is not a count")))?
        .unwrap_or(200);
    check("rel_tol", rel_tol, |x| x > 0.0 && x < 1.0, "must lie in (0, 1)")?;
    check("abs_tol", abs_tol, |x| x > 0.0, "must be positive")?;
    check("max_subdivisions", max_subdivisions, |x| x > 0, "must be positive")?;

    if mode == Mode::Identities {
        if let Some((key, e)) = t.entries.iter().find(|(k, _)| !["mode", "seed", "name", "units"].contains(k)) {
            return Err(ConfigError::UnknownKey {
                line: e.line,
                section: "identities mode".into(),
                key: key.to_string(),
            });
        }
        return Ok(RunConfig {
            mode,
            particle: ParticleParams {
                alpha0: 0.0,
                omega0: 0.0,
                damping: 0.0,
            },
            velocity: Sweep::Single(0.0),
            distance: None,
            index: 1.0,
            index_imag: 0.0,
            temp_particle: 0.0,
            temp_field: 0.0,
            rel_tol,
            abs_tol,
            max_subdivisions,
            units,
            name,
            seed,
        });
    }

    let particle = ParticleParams {
        alpha0: check("alpha0", t.require("alpha0", number)?, |x| x > 0.0, "must be positive")?,
        omega0: check("omega0", t.require("omega0", number)?, |x| x > 0.0, "must be positive")?,
        damping: check("damping", t.require("damping", number)?, |x| x >= 0.0, "must be non-negative")?,
    };
    let light = units.speed_of_light();
    let velocity = check_sweep(
        "v",
        t.require("v", |s| s.parse::<Sweep>())?,
        |x| x.abs() < light,
        "is not below the speed of light",
    )?;
    let temp = |key| -> Result<f64, ConfigError> {
        check(key, t.require(key, number)?, |x| x >= 0.0, "temperature must be non-negative")
    };
    let temp_particle = temp("T_A")?;
    let temp_field = temp("T_F")?;

    let surface_keys = ["z", "n", "n_imag"];
    let (distance, index, index_imag) = if mode == Mode::Surface {
        let z = check_sweep(
            "z",
            t.require("z", |s| s.parse::<Sweep>())?,
            |x| x > 0.0,
            "is not a positive distance",
        )?;
        let n = check("n", t.require("n", number)?, |x| x >= 1.0, "refractive index must be at least 1")?;
        let k = check("n_imag", t.get("n_imag", number)?.unwrap_or(0.0), |x| x >= 0.0, "must be non-negative")?;
        (Some(z), n, k)
    } else {
        if let Some((key, e)) = t.entries.iter().find(|(k, _)| surface_keys.contains(k)) {
            return Err(ConfigError::UnknownKey {
                line: e.line,
                section: "surface".into(),
                key: format!("{key} (blackbody mode has no surface)"),
            });
        }
        (None, 1.0, 0.0)
    };

    Ok(RunConfig {
        mode,
        particle,
        velocity,
        distance,
        index,
        index_imag,
        temp_particle,
        temp_field,
        rel_tol,
        abs_tol,
        max_subdivisions,
        units,
        name,
        seed,
    })
}
