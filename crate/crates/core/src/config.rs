//! Run configuration read from a sectioned key=value file.
//!
//! ```text
//! [run]
//! suites = euler, charge
//! seed = 7
//! [units]
//! hbar = 1
//! mu0 = 1
//! e2 = 1
//! [quadrature]
//! nodes = 16,16,8,8
//! radius = 1
//! [tolerances]
//! self-duality = 1e-10
//! ```

use std::collections::BTreeMap;

use hkit_algebra::Rational;
use thiserror::Error;

use crate::topology::QuadratureSpec;
use crate::units::Units;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },
}

/// Default tolerances of the numeric checks.
pub const DEFAULT_TOLERANCES: [(&str, f64); 9] = [
    ("charge", 1e-10),
    ("charge-convergence", 1e-12),
    ("radius-independence", 1e-12),
    ("self-duality", 1e-10),
    ("hyperspherical", 1e-10),
    ("radial-eigenvalue", 1e-6),
    ("radial-substitution", 1e-4),
    ("casimir-numeric", 1e-8),
    ("round-trip", 1e-12),
];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub nodes: QuadratureSpec,
    pub radius: f64,
    pub grid_points: usize,
    pub units: Units,
    pub seed: u64,
    /// Cap on scalar products for exact operator products.
    pub term_budget: usize,
    /// Test functions and points for the numeric Casimir fallback.
    pub casimir_functions: usize,
    pub casimir_points: usize,
    /// Random samples for identity checks on points.
    pub euler_samples: usize,
    pub point_samples: usize,
    /// Restricts the algebra suite to one relation.
    pub relation: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            suites: vec!["all".into()],
            tolerances: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            nodes: QuadratureSpec::default(),
            radius: 1.0,
            grid_points: crate::radial::DEFAULT_POINTS,
            units: Units::default(),
            seed: 20240607,
            term_budget: 2_000_000,
            casimir_functions: 2,
            casimir_points: 4,
            euler_samples: 1000,
            point_samples: 100,
            relation: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() })
}

fn parse_rational(key: &str, value: &str) -> Result<Rational, ConfigError> {
    match Rational::parse(value) {
        Some(q) if q.signum() > 0 => Ok(q),
        _ => Err(ConfigError::BadValue { key: key.into(), value: value.into() }),
    }
}

pub fn parse_nodes(value: &str) -> Result<QuadratureSpec, ConfigError> {
    let bad = || ConfigError::BadValue { key: "nodes".into(), value: value.into() };
    let n: Vec<usize> = value.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if n.len() != 4 {
        return Err(bad());
    }
    QuadratureSpec::new(n[0], n[1], n[2], n[3]).map_err(|_| bad())
}

impl SuiteConfig {
    /// Applies one `section.key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key {
            "run.suites" => self.suites = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            "run.seed" => self.seed = parse_value(key, value)?,
            "run.relation" => self.relation = Some(value.to_string()),
            "units.hbar" => self.units.hbar = parse_rational(key, value)?,
            "units.mu0" => self.units.mu0 = parse_rational(key, value)?,
            "units.e2" => self.units.e2 = parse_rational(key, value)?,
            "quadrature.nodes" => self.nodes = parse_nodes(value)?,
            "quadrature.radius" => {
                self.radius = parse_value(key, value)?;
                if !(self.radius > 0.0) {
                    return Err(ConfigError::BadValue { key: key.into(), value: value.into() });
                }
            }
            "radial.points" => self.grid_points = parse_value(key, value)?,
            "casimir.budget" => self.term_budget = parse_value(key, value)?,
            "casimir.functions" => self.casimir_functions = parse_value(key, value)?,
            "casimir.points" => self.casimir_points = parse_value(key, value)?,
            "samples.euler" => self.euler_samples = parse_value(key, value)?,
            "samples.points" => self.point_samples = parse_value(key, value)?,
            k if k.starts_with("tolerances.") => {
                let name = &k["tolerances.".len()..];
                if !self.tolerances.contains_key(name) {
                    return Err(ConfigError::UnknownKey(k.into()));
                }
                self.tolerances.insert(name.into(), parse_value(k, value)?);
            }
            k => return Err(ConfigError::UnknownKey(k.into())),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<SuiteConfig, ConfigError> {
        let mut cfg = SuiteConfig::default();
        cfg.merge(text)?;
        Ok(cfg)
    }

    /// Applies every setting of a config document on top of `self`.
    pub fn merge(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut section = String::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or(ConfigError::Syntax { line: n + 1, message: "unclosed section header".into() })?;
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1, message: "expected key = value".into() })?;
            let key = if section.is_empty() { k.trim().to_string() } else { format!("{}.{}", section, k.trim()) };
            self.set(&key, v)?;
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(0.0)
    }

    /// Flat key/value echo for reports, in a fixed order.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert("run.suites".into(), self.suites.join(","));
        out.insert("run.seed".into(), self.seed.to_string());
        if let Some(r) = &self.relation {
            out.insert("run.relation".into(), r.clone());
        }
        out.insert("units.hbar".into(), self.units.hbar.to_string());
        out.insert("units.mu0".into(), self.units.mu0.to_string());
        out.insert("units.e2".into(), self.units.e2.to_string());
        out.insert("quadrature.nodes".into(), self.nodes.counts().map(|n| n.to_string()).join(","));
        out.insert("quadrature.radius".into(), self.radius.to_string());
        out.insert("radial.points".into(), self.grid_points.to_string());
        out.insert("casimir.budget".into(), self.term_budget.to_string());
        out.insert("casimir.functions".into(), self.casimir_functions.to_string());
        out.insert("casimir.points".into(), self.casimir_points.to_string());
        out.insert("samples.euler".into(), self.euler_samples.to_string());
        out.insert("samples.points".into(), self.point_samples.to_string());
        for (k, v) in &self.tolerances {
            out.insert(format!("tolerances.{k}"), format!("{v:e}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections() {
        let cfg = SuiteConfig::parse("[run]\nsuites = euler, charge\nseed = 3 # comment\n[units]\ne2 = 1/2\n[quadrature]\nnodes = 8,8,4,4\n").unwrap();
        assert_eq!(cfg.suites, vec!["euler", "charge"]);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.units.e2, Rational::new(1, 2));
        assert_eq!(cfg.nodes.counts(), [8, 8, 4, 4]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SuiteConfig::parse("[run]\nfoo = 1"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(SuiteConfig::parse("[units]\nhbar = -1"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(SuiteConfig::parse("[run\n"), Err(ConfigError::Syntax { .. })));
        assert!(matches!(SuiteConfig::parse("[quadrature]\nnodes = 1,2,3,4"), Err(ConfigError::BadValue { .. })));
    }
}
