//! Pipeline configuration: defaults mirroring the published computation and
//! a flat key-value config file format.

use num_bigint::BigUint;
use num_traits::{Num, Zero};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::PrecisionPolicy;

/// Full configuration of the `prove` pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProveConfig {
    pub initial_digits: u32,
    pub max_digits: u32,
    /// Multiplier cap M of the reduction stage (serialized as decimal).
    #[serde(with = "biguint_decimal")]
    pub m_cap: BigUint,
    pub n_lo: u64,
    pub n_hi: u64,
    /// Global cap on x in the exhaustive search.
    pub x_cap_global: u64,
    /// Odd-index cap of the n = 1 case.
    pub m_cap_n1: u64,
    /// Convergents tried per reduction instance.
    ///
    /// The published computation suggests one or two suffice, but the
    /// instances with n >= 23 provably need up to 38 successive convergents
    /// (gamma_n + mu lies within beta^(2n+2) of the integer n + 1, which
    /// pins ||mu q|| near ||gamma_n q|| until q is large), so the default
    /// leaves room.
    pub cf_budget: usize,
}

impl Default for ProveConfig {
    fn default() -> Self {
        ProveConfig {
            initial_digits: 200,
            max_digits: 3200,
            m_cap: BigUint::from(4u32) * BigUint::from(10u32).pow(16),
            n_lo: 2,
            n_hi: 37,
            x_cap_global: 77,
            m_cap_n1: 23,
            cf_budget: 60,
        }
    }
}

impl ProveConfig {
    pub fn policy(&self) -> Result<PrecisionPolicy> {
        PrecisionPolicy::new(self.initial_digits, self.max_digits, 2)
    }

    pub fn validate(&self) -> Result<()> {
        self.policy()?;
        if self.n_lo < 2 || self.n_hi < self.n_lo {
            return Err(Error::Config(format!(
                "search range [{}, {}] is invalid; n_lo must be >= 2",
                self.n_lo, self.n_hi
            )));
        }
        if self.m_cap.is_zero() {
            return Err(Error::Config("M must be positive".to_string()));
        }
        if self.cf_budget == 0 {
            return Err(Error::Config("cf_budget must be positive".to_string()));
        }
        Ok(())
    }

    /// Parse the flat `key = value` config format; `#` starts a comment.
    pub fn from_str_config(text: &str) -> Result<Self> {
        let mut cfg = ProveConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_u64 = |v: &str| -> Result<u64> {
                v.parse()
                    .map_err(|_| Error::Config(format!("line {}: bad integer {v}", lineno + 1)))
            };
            match key {
                "initial_digits" => cfg.initial_digits = parse_u64(value)? as u32,
                "max_digits" => cfg.max_digits = parse_u64(value)? as u32,
                "M" => cfg.m_cap = parse_sci_biguint(value)?,
                "n_lo" => cfg.n_lo = parse_u64(value)?,
                "n_hi" => cfg.n_hi = parse_u64(value)?,
                "x_cap_global" => cfg.x_cap_global = parse_u64(value)?,
                "m_cap_n1" => cfg.m_cap_n1 = parse_u64(value)?,
                "cf_budget" => cfg.cf_budget = parse_u64(value)? as usize,
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other}",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_config(&text)
    }
}

/// Parse integers in plain or exponent form: "77", "4e16", "7e28".
pub fn parse_sci_biguint(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e),
        None => (s, "0"),
    };
    let exp: u32 = exp
        .parse()
        .map_err(|_| Error::Config(format!("bad exponent in {s}")))?;
    let mantissa = BigUint::from_str_radix(mantissa, 10)
        .map_err(|_| Error::Config(format!("bad integer {s}")))?;
    Ok(mantissa * BigUint::from(10u32).pow(exp))
}

mod biguint_decimal {
    use num_bigint::BigUint;
    use num_traits::Num;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str_radix(&s, 10).map_err(serde::de::Error::custom)
    }
}
