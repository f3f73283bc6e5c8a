//! Sweep configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments start with '#'
//! scenario  = custom          # fig2 | fig3 | custom
//! p_values  = 0.9, 0.75
//! alpha_deg = 0, 9.22         # or: coherence = 1.0, 0.8
//! r_points  = 21              # or: r_grid = 0, 0.5, 1
//! shots     = 10000
//! bootstrap = 200
//! seed      = 20240607
//! out       = sweep.csv
//! ```
//!
//! `fig2` and `fig3` load their defaults first; any key present overrides
//! them.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::prep::{alpha_for_coherence, PrepSetting};

pub const DEFAULT_SHOTS: u64 = 10_000;
pub const DEFAULT_BOOTSTRAP: usize = 200;
pub const DEFAULT_SEED: u64 = 20_240_607;
pub const DEFAULT_R_POINTS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Fig2,
    Fig3,
    Custom,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fig2" => Ok(Scenario::Fig2),
            "fig3" => Ok(Scenario::Fig3),
            "custom" => Ok(Scenario::Custom),
            other => Err(Error::ConfigInvalid(format!("unknown scenario `{other}`"))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Custom => "custom",
        })
    }
}

/// How the entries of [`SweepConfig::angles`] are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleUnits {
    /// HWP1 angle in degrees.
    Degrees,
    /// Target l1 coherence of the prepared state.
    Coherence,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub p_values: Vec<f64>,
    pub angles: Vec<f64>,
    pub angle_units: AngleUnits,
    pub r_grid: Vec<f64>,
    pub shots: u64,
    pub n_bootstrap: usize,
    pub seed: u64,
    pub output_path: PathBuf,
}

/// `n` evenly spaced points on `[0, 1]`, endpoints included.
pub fn uniform_r_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub shots: Option<u64>,
    pub n_bootstrap: Option<usize>,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub r_points: Option<usize>,
}

impl SweepConfig {
    /// Three bath temperatures, maximally coherent input.
    pub fn fig2() -> Self {
        Self {
            scenario: Scenario::Fig2,
            p_values: vec![0.9, 0.75, 0.6],
            angles: vec![1.0],
            angle_units: AngleUnits::Coherence,
            r_grid: uniform_r_grid(DEFAULT_R_POINTS),
            shots: DEFAULT_SHOTS,
            n_bootstrap: DEFAULT_BOOTSTRAP,
            seed: DEFAULT_SEED,
            output_path: PathBuf::from("fig2.csv"),
        }
    }

    /// One bath temperature, three initial coherences.
    pub fn fig3() -> Self {
        Self {
            scenario: Scenario::Fig3,
            p_values: vec![0.9],
            angles: vec![0.8, 0.6, 0.4],
            angle_units: AngleUnits::Coherence,
            output_path: PathBuf::from("fig3.csv"),
            ..Self::fig2()
        }
    }

    pub fn for_scenario(scenario: Scenario) -> Self {
        match scenario {
            Scenario::Fig2 => Self::fig2(),
            Scenario::Fig3 => Self::fig3(),
            Scenario::Custom => Self {
                scenario: Scenario::Custom,
                output_path: PathBuf::from("sweep.csv"),
                ..Self::fig2()
            },
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::ConfigInvalid(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            entries.push((key.trim().to_string(), value.trim().to_string()));
        }

        let scenario = match entries.iter().find(|(k, _)| k == "scenario") {
            Some((_, v)) => v.parse()?,
            None => Scenario::Custom,
        };
        let mut config = Self::for_scenario(scenario);
        let mut angle_keys = 0;
        let mut r_keys = 0;

        for (key, value) in &entries {
            match key.as_str() {
                "scenario" => {}
                "p_values" => config.p_values = parse_list(key, value)?,
                "alpha_deg" => {
                    config.angles = parse_list(key, value)?;
                    config.angle_units = AngleUnits::Degrees;
                    angle_keys += 1;
                }
                "coherence" => {
                    config.angles = parse_list(key, value)?;
                    config.angle_units = AngleUnits::Coherence;
                    angle_keys += 1;
                }
                "r_grid" => {
                    config.r_grid = parse_list(key, value)?;
                    r_keys += 1;
                }
                "r_points" => {
                    config.r_grid = uniform_r_grid(parse_scalar(key, value)?);
                    r_keys += 1;
                }
                "shots" => config.shots = parse_scalar(key, value)?,
                "bootstrap" => config.n_bootstrap = parse_scalar(key, value)?,
                "seed" => config.seed = parse_scalar(key, value)?,
                "out" => config.output_path = PathBuf::from(value),
                other => return Err(Error::ConfigInvalid(format!("unknown key `{other}`"))),
            }
        }
        if angle_keys > 1 {
            return Err(Error::ConfigInvalid(
                "give exactly one of `alpha_deg` and `coherence`".into(),
            ));
        }
        if r_keys > 1 {
            return Err(Error::ConfigInvalid(
                "give exactly one of `r_grid` and `r_points`".into(),
            ));
        }
        config.validate()?;
        Ok(config)
    }

    pub fn apply_overrides(&mut self, overrides: &Overrides) {
        if let Some(shots) = overrides.shots {
            self.shots = shots;
        }
        if let Some(n) = overrides.n_bootstrap {
            self.n_bootstrap = n;
        }
        if let Some(seed) = overrides.seed {
            self.seed = seed;
        }
        if let Some(path) = &overrides.output_path {
            self.output_path = path.clone();
        }
        if let Some(n) = overrides.r_points {
            self.r_grid = uniform_r_grid(n);
        }
    }

    /// The preparation setting for each entry of `angles`.
    pub fn preparations(&self) -> Result<Vec<PrepSetting>> {
        self.angles
            .iter()
            .map(|&a| match self.angle_units {
                AngleUnits::Degrees => PrepSetting::from_degrees(a, false),
                AngleUnits::Coherence => PrepSetting::new(alpha_for_coherence(a)?, false),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.p_values.is_empty() || self.angles.is_empty() || self.r_grid.is_empty() {
            return bad("p_values, angles and r grid must all be non-empty".into());
        }
        if let Some(p) = self.p_values.iter().find(|p| !(0.5..=1.0).contains(*p)) {
            return bad(format!("p = {p} is outside [0.5, 1]"));
        }
        if let Some(r) = self.r_grid.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return bad(format!("r = {r} is outside [0, 1]"));
        }
        if self.shots == 0 {
            return bad("shots must be at least 1".into());
        }
        if self.n_bootstrap < 2 {
            return bad("bootstrap must be at least 2".into());
        }
        self.preparations().map(|_| ())
    }
}

fn parse_scalar<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::ConfigInvalid(format!("`{key}`: cannot parse `{value}`")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_scalar(key, s))
        .collect()
}
