use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use permcode::arith::is_prime;
use permcode::perfect::DEFAULT_PRIMES;
use permcode::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Settings read from `--config`. Every field is optional; command-line
/// flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase", deny_unknown_fields)]
pub struct CliConfig {
    pub threads: Option<usize>,
    pub time_limit: Option<f64>,
    pub seed: Option<u64>,
    pub enumeration_limit: Option<usize>,
    pub dimension_limit: Option<usize>,
    pub prime_list: Option<Vec<u64>>,
    pub output_format: Option<OutputFormat>,
}

impl CliConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fills unset fields from `fallback`.
    pub fn or(self, fallback: CliConfig) -> CliConfig {
        CliConfig {
            threads: self.threads.or(fallback.threads),
            time_limit: self.time_limit.or(fallback.time_limit),
            seed: self.seed.or(fallback.seed),
            enumeration_limit: self.enumeration_limit.or(fallback.enumeration_limit),
            dimension_limit: self.dimension_limit.or(fallback.dimension_limit),
            prime_list: self.prime_list.or(fallback.prime_list),
            output_format: self.output_format.or(fallback.output_format),
        }
    }

    pub fn resolve(self) -> Result<Settings> {
        let positive = |name: &str, v: Option<usize>| match v {
            Some(0) => Err(Error::InvalidInput(format!("{name} must be positive"))),
            _ => Ok(()),
        };
        positive("threads", self.threads)?;
        positive("enumerationLimit", self.enumeration_limit)?;
        positive("dimensionLimit", self.dimension_limit)?;
        if let Some(t) = self.time_limit {
            if t.is_nan() || t <= 0.0 {
                return Err(Error::InvalidInput("timeLimit must be positive".into()));
            }
        }
        let primes = self.prime_list.unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
        if primes.is_empty() {
            return Err(Error::InvalidInput("primeList is empty".into()));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidInput(format!("primeList entry {p} is not prime")));
        }
        let mut limits = Limits::default();
        if let Some(e) = self.enumeration_limit {
            limits.enumeration = e;
        }
        if let Some(d) = self.dimension_limit {
            limits.sparse_dimension = d;
            limits.dense_dimension = limits.dense_dimension.min(d);
        }
        Ok(Settings {
            threads: self.threads.unwrap_or(1),
            time_limit: self.time_limit,
            seed: self.seed.unwrap_or(0),
            limits,
            primes,
            format: self.output_format.unwrap_or_default(),
        })
    }
}

/// Fully resolved settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub threads: usize,
    pub time_limit: Option<f64>,
    pub seed: u64,
    pub limits: Limits,
    pub primes: Vec<u64>,
    pub format: OutputFormat,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: CliConfig = serde_json::from_str(r#"{"threads": 4, "seed": 9, "outputFormat": "text"}"#).unwrap();
        let flags = CliConfig {
            threads: Some(2),
            ..Default::default()
        };
        let s = flags.or(file).resolve().unwrap();
        assert_eq!(s.threads, 2);
        assert_eq!(s.seed, 9);
        assert_eq!(s.format, OutputFormat::Text);
        assert_eq!(s.primes, DEFAULT_PRIMES);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(serde_json::from_str::<CliConfig>(r#"{"bogus": 1}"#).is_err());
        let bad = |c: CliConfig| c.resolve().is_err();
        assert!(bad(CliConfig {
            threads: Some(0),
            ..Default::default()
        }));
        assert!(bad(CliConfig {
            prime_list: Some(vec![1_000_001]),
            ..Default::default()
        }));
        assert!(bad(CliConfig {
            time_limit: Some(-1.0),
            ..Default::default()
        }));
    }
}
