use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive arithmetic angle range `start:stop:step`; each bound accepts
/// expressions such as `pi/6`, `2*pi/3` or `0.25`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if step <= 0.0 {
            return Err(Error::invalid(format!("grid step {step} must be positive")));
        }
        if stop < start {
            return Err(Error::invalid(format!(
                "grid stop {stop} is below start {start}"
            )));
        }
        Ok(GridSpec { start, stop, step })
    }

    /// `0 : pi/2 : pi/6`, four points per axis.
    pub fn standard() -> Self {
        GridSpec {
            start: 0.0,
            stop: PI / 2.0,
            step: PI / 6.0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .collect()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::standard()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::invalid(format!("grid '{s}' is not start:stop:step")));
        };
        GridSpec::new(parse_angle(a)?, parse_angle(b)?, parse_angle(c)?)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// Evaluates a product/quotient of numbers and `pi`, e.g. `-3*pi/4`.
pub fn parse_angle(expr: &str) -> Result<f64> {
    let bad = || Error::invalid(format!("cannot parse angle '{expr}'"));
    let trimmed = expr.trim();
    let (sign, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, trimmed),
    };
    let factor = |tok: &str| -> Result<f64> {
        match tok.trim() {
            "pi" | "PI" | "π" => Ok(PI),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(bad),
        }
    };
    let mut value = None;
    let mut op = '*';
    let mut token = String::new();
    for ch in body.chars().chain(std::iter::once('\0')) {
        if ch == '*' || ch == '/' || ch == '\0' {
            let v = factor(&token)?;
            value = Some(match (value, op) {
                (None, _) => v,
                (Some(acc), '*') => acc * v,
                (Some(acc), _) if v != 0.0 => acc / v,
                _ => return Err(bad()),
            });
            op = ch;
            token.clear();
        } else {
            token.push(ch);
        }
    }
    value.map(|v| sign * v).ok_or_else(bad)
}
