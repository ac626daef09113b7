//! Numerical thresholds shared by the root finder and the classifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE double throughout.
    #[serde(rename = "std")]
    Standard,
    /// Root refinement in double-double arithmetic (about 31 significant digits).
    #[serde(rename = "ext")]
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "std" | "standard" | "double" => Ok(Precision::Standard),
            "ext" | "extended" | "dd" | "double-double" => Ok(Precision::Extended),
            other => Err(Error::Parse(format!("unknown precision mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precision::Standard => "std",
            Precision::Extended => "ext",
        })
    }
}

/// Thresholds used to decide whether a computed root is real, whether two
/// roots are the same multiple root, and whether a root sits on `z = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub tau_real: f64,
    pub tau_cluster: f64,
    pub tau_edge: f64,
    pub precision: Precision,
}

const EXTENDED_SCALE: f64 = 1e-10;

impl NumericConfig {
    pub fn standard() -> Self {
        NumericConfig {
            tau_real: 1e-9,
            tau_cluster: 1e-6,
            tau_edge: 1e-9,
            precision: Precision::Standard,
        }
    }

    pub fn extended() -> Self {
        let s = Self::standard();
        NumericConfig {
            tau_real: s.tau_real * EXTENDED_SCALE,
            tau_cluster: s.tau_cluster * EXTENDED_SCALE,
            tau_edge: s.tau_edge * EXTENDED_SCALE,
            precision: Precision::Extended,
        }
    }

    pub fn for_precision(precision: Precision) -> Self {
        match precision {
            Precision::Standard => Self::standard(),
            Precision::Extended => Self::extended(),
        }
    }

    /// Builds a configuration from explicit thresholds, checking its invariants.
    pub fn new(
        tau_real: f64,
        tau_cluster: f64,
        tau_edge: f64,
        precision: Precision,
    ) -> Result<Self> {
        let cfg = NumericConfig {
            tau_real,
            tau_cluster,
            tau_edge,
            precision,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tau_real", self.tau_real),
            ("tau_cluster", self.tau_cluster),
            ("tau_edge", self.tau_edge),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.tau_cluster < self.tau_real {
            return Err(Error::InvalidConfig(format!(
                "tau_cluster ({}) must not be smaller than tau_real ({})",
                self.tau_cluster, self.tau_real
            )));
        }
        Ok(())
    }
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        NumericConfig::standard().validate().unwrap();
        NumericConfig::extended().validate().unwrap();
        let e = NumericConfig::extended();
        assert!((e.tau_real - 1e-19).abs() < 1e-30);
        assert!((e.tau_cluster - 1e-16).abs() < 1e-27);
    }

    #[test]
    fn rejects_bad_thresholds() {
        assert!(NumericConfig::new(0.0, 1e-6, 1e-9, Precision::Standard).is_err());
        assert!(NumericConfig::new(1e-6, 1e-9, 1e-9, Precision::Standard).is_err());
        assert!(NumericConfig::new(1e-9, 1e-6, f64::NAN, Precision::Standard).is_err());
    }

    #[test]
    fn precision_parses() {
        assert_eq!("ext".parse::<Precision>().unwrap(), Precision::Extended);
        assert_eq!("STD".parse::<Precision>().unwrap(), Precision::Standard);
        assert!("quad".parse::<Precision>().is_err());
    }
}
