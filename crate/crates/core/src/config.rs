//! Line-based scenario files for the `A_{alpha,beta}` structures.
//!
//! ```text
//! # comment
//! [case1]
//! d = 2
//! a = -1
//! poles = 1
//! m = 1,-1
//! c = 1
//! extra = t^2 + t^-2
//! beta = 2/3
//! ```
//!
//! `m` is a semicolon-separated list of rows, one per pole. For `[case2]` the
//! keys are `a, poles, m0, m, c` with `m` a single comma list, plus optional
//! `extra` and `beta`.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::aab::{Case1Data, Case2Data, CaseData};
use crate::parse::{parse_rational, parse_scalar, ParseError};
use crate::poly::RationalFn;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("bad matrix shape: {0}")]
    BadMatrixShape(String),
    #[error("row {row} of m sums to {sum}, expected 0")]
    RowSumNonzero { row: usize, sum: i64 },
    #[error("key `{key}`: {source}")]
    Value {
        key: String,
        #[source]
        source: ParseError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AabConfig {
    pub case: CaseData,
    /// When absent the CLI sweeps a default set of betas.
    pub beta: Option<Scalar>,
}

pub fn load_aab_config(path: &Path, field: &Field) -> Result<AabConfig, ConfigError> {
    parse_aab_config(&std::fs::read_to_string(path)?, field)
}

pub fn parse_aab_config(text: &str, field: &Field) -> Result<AabConfig, ConfigError> {
    let mut section: Option<String> = None;
    let mut keys = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let err = |message: String| ConfigError::Syntax { line: idx + 1, message };
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if section.is_some() {
                return Err(err("only one section is allowed".into()));
            }
            if name != "case1" && name != "case2" {
                return Err(err(format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(err(format!("expected key = value, found `{line}`")));
        };
        if section.is_none() {
            return Err(err("key before section header".into()));
        }
        let k = k.trim();
        let allowed: &[&str] = match section.as_deref() {
            Some("case1") => &["d", "a", "poles", "m", "c", "extra", "beta"],
            _ => &["a", "poles", "m0", "m", "c", "extra", "beta"],
        };
        if !allowed.contains(&k) {
            return Err(err(format!("unknown key `{k}`")));
        }
        if keys.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(err(format!("duplicate key `{k}`")));
        }
    }
    let Some(section) = section else {
        return Err(ConfigError::Syntax {
            line: 0,
            message: "missing [case1] or [case2] header".into(),
        });
    };
    let r = Reader { keys, field };
    let beta = r.opt("beta").map(|s| r.scalar("beta", s)).transpose()?;
    let extra = match r.opt("extra") {
        Some(s) => parse_rational(s, field).map_err(|e| value_err("extra", e))?,
        None => RationalFn::zero(field),
    };
    let case = if section == "case1" {
        let d = r.int("d")?;
        let d = u32::try_from(d).map_err(|_| syntax_value("d", "must be a nonnegative integer"))?;
        let a = r.scalar("a", r.get("a")?)?;
        let base_poles = r.scalars("poles")?;
        let m = r.matrix("m")?;
        if m.len() != base_poles.len() {
            return Err(ConfigError::BadMatrixShape(format!(
                "{} rows for {} poles",
                m.len(),
                base_poles.len()
            )));
        }
        for (row, entries) in m.iter().enumerate() {
            if entries.len() != d as usize {
                return Err(ConfigError::BadMatrixShape(format!(
                    "row {} has {} entries, expected d = {d}",
                    row + 1,
                    entries.len()
                )));
            }
            let sum: i64 = entries.iter().sum();
            if sum != 0 {
                return Err(ConfigError::RowSumNonzero { row: row + 1, sum });
            }
        }
        let c = r.scalar("c", r.get("c")?)?;
        CaseData::One(Case1Data {
            d,
            a,
            base_poles,
            m,
            c,
            extra,
        })
    } else {
        let a = r.scalar("a", r.get("a")?)?;
        let base_poles = r.scalars("poles")?;
        let m0 = r.int("m0")?;
        let m = r.ints("m", r.get("m")?)?;
        if m.len() != base_poles.len() {
            return Err(ConfigError::BadMatrixShape(format!(
                "{} exponents for {} poles",
                m.len(),
                base_poles.len()
            )));
        }
        let c = r.scalar("c", r.get("c")?)?;
        CaseData::Two(Case2Data {
            a,
            base_poles,
            m0,
            m,
            c,
            extra,
        })
    };
    Ok(AabConfig { case, beta })
}

fn value_err(key: &str, source: ParseError) -> ConfigError {
    ConfigError::Value {
        key: key.to_string(),
        source,
    }
}

fn syntax_value(key: &str, message: &str) -> ConfigError {
    ConfigError::Syntax {
        line: 0,
        message: format!("key `{key}` {message}"),
    }
}

struct Reader<'a> {
    keys: BTreeMap<String, String>,
    field: &'a Field,
}

impl Reader<'_> {
    fn opt(&self, k: &str) -> Option<&str> {
        self.keys.get(k).map(String::as_str)
    }

    fn get(&self, k: &str) -> Result<&str, ConfigError> {
        self.opt(k).ok_or_else(|| ConfigError::MissingKey(k.to_string()))
    }

    fn scalar(&self, k: &str, s: &str) -> Result<Scalar, ConfigError> {
        parse_scalar(s, self.field).map_err(|e| value_err(k, e))
    }

    fn scalars(&self, k: &str) -> Result<Vec<Scalar>, ConfigError> {
        split_list(self.get(k)?, ',').map(|s| self.scalar(k, s)).collect()
    }

    fn int(&self, k: &str) -> Result<i64, ConfigError> {
        let s = self.get(k)?;
        s.parse()
            .map_err(|_| syntax_value(k, &format!("expects an integer, found `{s}`")))
    }

    fn ints(&self, k: &str, s: &str) -> Result<Vec<i64>, ConfigError> {
        split_list(s, ',')
            .map(|x| {
                x.parse()
                    .map_err(|_| syntax_value(k, &format!("expects integers, found `{x}`")))
            })
            .collect()
    }

    fn matrix(&self, k: &str) -> Result<Vec<Vec<i64>>, ConfigError> {
        split_list(self.get(k)?, ';').map(|row| self.ints(k, row)).collect()
    }
}

/// Splits on `sep`, trimming entries; an empty value is an empty list.
fn split_list(s: &str, sep: char) -> impl Iterator<Item = &str> {
    let s = s.trim();
    s.split(sep).map(str::trim).filter(move |_| !s.is_empty())
}
