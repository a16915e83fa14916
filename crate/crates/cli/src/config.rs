use std::path::PathBuf;

use oriented_ideal::betti::{BettiConfig, DEFAULT_LATTICE_CAP};
use thiserror::Error;

pub const LATTICE_CAP_ENV: &str = "ORIENTED_IDEAL_LATTICE_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),
    #[error("unknown format {0:?} (expected json, csv or md)")]
    Format(String),
    #[error("{LATTICE_CAP_ENV}={0:?} is not a positive integer")]
    CapEnv(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Md,
}

impl std::str::FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(ConfigError::Format(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Invariants,
    ReproducePaper,
    Fuzz,
}

/// Bounds on randomly generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimits {
    pub max_x: usize,
    pub max_y: usize,
    pub max_weight: u32,
    pub max_power: u32,
    pub max_components: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        Self {
            max_x: 3,
            max_y: 3,
            max_weight: 2,
            max_power: 2,
            max_components: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub power: u32,
    pub seed: u64,
    pub count: usize,
    pub limits: SizeLimits,
    /// Explicit override; falls back to the environment, then the default.
    pub lattice_cap: Option<usize>,
    pub format: Format,
    /// Negative control for `fuzz`: flip edge orientations at random.
    pub scramble: bool,
    /// Restrict `reproduce-paper` to one fixture.
    pub only: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            power: 1,
            seed: 0,
            count: 100,
            limits: SizeLimits::default(),
            lattice_cap: None,
            format: Format::default(),
            scramble: false,
            only: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.power == 0 || self.limits.max_power == 0 {
            return Err(ConfigError::ZeroPower);
        }
        let counts = [
            ("count", self.count),
            ("max-x", self.limits.max_x),
            ("max-y", self.limits.max_y),
            ("max-components", self.limits.max_components),
            ("max-weight", self.limits.max_weight as usize),
        ];
        match counts.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(ConfigError::ZeroCount(name)),
            None => Ok(()),
        }
    }

    /// Oracle configuration: flag, then environment, then default cap.
    pub fn betti_config(&self) -> Result<BettiConfig, ConfigError> {
        let cap = match self.lattice_cap {
            Some(cap) => cap,
            None => match std::env::var(LATTICE_CAP_ENV) {
                Ok(text) => text
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&c| c > 0)
                    .ok_or(ConfigError::CapEnv(text))?,
                Err(_) => DEFAULT_LATTICE_CAP,
            },
        };
        Ok(BettiConfig::with_cap(cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("md".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Fuzz);
        assert!(c.validate().is_ok());
        c.power = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroPower));
        c.power = 1;
        c.count = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroCount("count")));
    }

    #[test]
    fn explicit_cap_wins() {
        let mut c = RunConfig::new(Command::Invariants);
        c.lattice_cap = Some(7);
        assert_eq!(c.betti_config().unwrap().lattice_cap, 7);
    }
}
