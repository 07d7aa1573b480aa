//! Parsing of coordinate specifications: a bare scalar or an inclusive
//! `min:max[:count]` range, with `pi` arithmetic in any position
//! (`pi`, `2pi`, `pi/2`, `0.75pi`, `-pi/4`).

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordSpec {
    Scalar(f64),
    Range {
        min: f64,
        max: f64,
        count: Option<usize>,
    },
}

impl CoordSpec {
    pub fn is_range(&self) -> bool {
        matches!(self, CoordSpec::Range { .. })
    }

    pub fn scalar(&self) -> Option<f64> {
        match self {
            CoordSpec::Scalar(x) => Some(*x),
            CoordSpec::Range { .. } => None,
        }
    }

    /// Materialize with a default point count for ranges.
    pub fn values(&self, default_count: usize) -> Result<Vec<f64>, CliError> {
        match *self {
            CoordSpec::Scalar(x) => Ok(vec![x]),
            CoordSpec::Range { min, max, count } => {
                let n = count.unwrap_or(default_count);
                if n < 2 {
                    return Err(CliError::new(format!(
                        "range needs at least 2 points, got {n}"
                    )));
                }
                if max <= min || max.is_nan() || min.is_nan() {
                    return Err(CliError::new(format!("degenerate range {min}:{max}")));
                }
                Ok(linspace(min, max, n))
            }
        }
    }
}

pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| min + (max - min) * i as f64 / (n - 1) as f64)
        .collect()
}

/// A number token, possibly involving `pi`.
pub fn parse_number(token: &str) -> Result<f64, CliError> {
    let s = token.trim();
    if s.is_empty() {
        return Err(CliError::new("empty number"));
    }
    if let Some(at) = s.find("pi") {
        let (coef_str, rest) = (&s[..at], &s[at + 2..]);
        let coef = match coef_str {
            "" => 1.0,
            "-" => -1.0,
            "+" => 1.0,
            other => other
                .parse::<f64>()
                .map_err(|_| CliError::new(format!("bad coefficient in '{s}'")))?,
        };
        let div = match rest {
            "" => 1.0,
            d if d.starts_with('/') => d[1..]
                .parse::<f64>()
                .map_err(|_| CliError::new(format!("bad divisor in '{s}'")))?,
            _ => return Err(CliError::new(format!("cannot parse '{s}'"))),
        };
        if div == 0.0 {
            return Err(CliError::new(format!("division by zero in '{s}'")));
        }
        Ok(coef * std::f64::consts::PI / div)
    } else {
        s.parse::<f64>()
            .map_err(|_| CliError::new(format!("cannot parse number '{s}'")))
    }
}

pub fn parse_coord(spec: &str) -> Result<CoordSpec, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => Ok(CoordSpec::Scalar(parse_number(parts[0])?)),
        2 => Ok(CoordSpec::Range {
            min: parse_number(parts[0])?,
            max: parse_number(parts[1])?,
            count: None,
        }),
        3 => {
            let count: usize = parts[2]
                .parse()
                .map_err(|_| CliError::new(format!("bad point count '{}'", parts[2])))?;
            Ok(CoordSpec::Range {
                min: parse_number(parts[0])?,
                max: parse_number(parts[1])?,
                count: Some(count),
            })
        }
        _ => Err(CliError::new(format!(
            "coordinate '{spec}' is not 'value' or 'min:max[:count]'"
        ))),
    }
}
