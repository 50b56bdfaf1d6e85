//! Enumeration guards.
//!
//! Overridable from a `key=value` file with keys `max_group_order`,
//! `max_candidates` and `max_sheets`. Blank lines and `#` comments are
//! ignored.

use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest materialized group (symplectic or general linear).
    pub max_group_order: u128,
    /// Largest number of candidate tuples scanned by enumeration.
    pub max_candidates: u128,
    /// Largest number of sheets in a permutation cover.
    pub max_sheets: u128,
    /// Largest number of candidate monodromies scanned by the brute-force
    /// oracle. Not a config key; follows `max_candidates / 10`.
    pub max_oracle_candidates: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 1_000_000,
            max_candidates: 10_000_000,
            max_sheets: 4096,
            max_oracle_candidates: 1_000_000,
        }
    }
}

impl Limits {
    pub fn check(what: &str, size: u128, limit: u128) -> Result<()> {
        if size > limit {
            Err(Error::TooLarge { what: what.to_string(), size, limit })
        } else {
            Ok(())
        }
    }
}

/// Error from parsing a limits file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLimitsError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseLimitsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseLimitsError {}

impl FromStr for Limits {
    type Err = ParseLimitsError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut limits = Limits::default();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ParseLimitsError { line: idx + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
            let value: u128 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|e| err(format!("bad value for {}: {e}", key.trim())))?;
            match key.trim() {
                "max_group_order" => limits.max_group_order = value,
                "max_candidates" => {
                    limits.max_candidates = value;
                    limits.max_oracle_candidates = (value / 10).max(1);
                }
                "max_sheets" => limits.max_sheets = value,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(limits)
    }
}
