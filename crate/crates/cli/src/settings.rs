//! Named scenario parameters and `key=value` overrides.

use std::fmt;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(usize),
    List(Vec<f64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Real(x) => write!(f, "{x}"),
            Self::Count(n) => write!(f, "{n}"),
            Self::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Ordered parameter set of one scenario. Only keys present in the
/// defaults can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    entries: Vec<(&'static str, Value)>,
    overridden: Vec<&'static str>,
}

impl Settings {
    pub fn new(entries: Vec<(&'static str, Value)>) -> Self {
        Self { entries, overridden: Vec::new() }
    }

    pub fn entries(&self) -> &[(&'static str, Value)] {
        &self.entries
    }

    pub fn overridden(&self) -> &[&'static str] {
        &self.overridden
    }

    /// Applies `key=value`. Lists are comma separated.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("override '{assignment}' is not key=value")))?;
        let (key, raw) = (key.trim(), raw.trim());
        let slot = self
            .entries
            .iter_mut()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| CliError::Usage(format!("unknown key '{key}' for this scenario")))?;
        let bad = || CliError::Usage(format!("cannot parse '{raw}' for key '{key}'"));
        slot.1 = match slot.1 {
            Value::Real(_) => Value::Real(parse_real(raw).ok_or_else(bad)?),
            Value::Count(_) => Value::Count(raw.parse().map_err(|_| bad())?),
            Value::List(_) => {
                Value::List(raw.split(',').map(|s| parse_real(s.trim())).collect::<Option<Vec<_>>>().ok_or_else(bad)?)
            }
        };
        if !self.overridden.contains(&slot.0) {
            self.overridden.push(slot.0);
        }
        Ok(())
    }

    fn get(&self, key: &str) -> &Value {
        &self.entries.iter().find(|(k, _)| *k == key).unwrap_or_else(|| panic!("scenario has no key '{key}'")).1
    }

    pub fn real(&self, key: &str) -> f64 {
        match self.get(key) {
            Value::Real(x) => *x,
            other => panic!("key '{key}' is not real: {other:?}"),
        }
    }

    pub fn count(&self, key: &str) -> usize {
        match self.get(key) {
            Value::Count(n) => *n,
            other => panic!("key '{key}' is not a count: {other:?}"),
        }
    }

    pub fn list(&self, key: &str) -> &[f64] {
        match self.get(key) {
            Value::List(xs) => xs,
            other => panic!("key '{key}' is not a list: {other:?}"),
        }
    }
}

/// Accepts plain floats plus `pi` and `2pi`-style multiples.
fn parse_real(s: &str) -> Option<f64> {
    if let Ok(x) = s.parse::<f64>() {
        return x.is_finite().then_some(x);
    }
    let factor = s.strip_suffix("pi")?;
    let k = if factor.is_empty() { 1.0 } else { factor.parse::<f64>().ok()? };
    Some(k * std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Settings {
        Settings::new(vec![
            ("alpha", Value::Real(100.0)),
            ("n_phi", Value::Count(360)),
            ("phi_r", Value::List(vec![1.0, 2.0])),
        ])
    }

    #[test]
    fn overrides_replace_values() {
        let mut s = sample();
        s.apply("alpha=0").unwrap();
        s.apply("phi_r=pi,0.5").unwrap();
        s.apply("n_phi = 12").unwrap();
        assert_eq!(s.real("alpha"), 0.0);
        assert_eq!(s.list("phi_r"), &[std::f64::consts::PI, 0.5]);
        assert_eq!(s.count("n_phi"), 12);
        assert_eq!(s.overridden(), &["alpha", "phi_r", "n_phi"]);
    }

    #[test]
    fn bad_overrides_are_usage_errors() {
        let mut s = sample();
        for bad in ["alpha", "beta=1", "alpha=abc", "n_phi=-1", "alpha=inf", "phi_r=1,,2"] {
            assert!(matches!(s.apply(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }
}
