use std::path::{Path, PathBuf};

use gr_codes::frs::{DEFAULT_ENUMERATION_CAP, DEFAULT_RECURSION_CAP};
use gr_codes::rs::DEFAULT_ROOT_CAP;
use gr_codes::{RingDescriptor, RingParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Rs,
    Frs,
}

/// Everything a run depends on. The seed determines all randomness.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub ring: RingDescriptor,
    pub code: CodeKind,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_roots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_enumeration: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn one() -> usize {
    1
}

pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 16;

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::validation(format!("bad config: {e}")))
    }

    pub fn ring(&self) -> Result<RingParams, CliError> {
        RingParams::from_descriptor(&self.ring).map_err(CliError::from)
    }

    pub fn m(&self) -> usize {
        self.m.unwrap_or(1)
    }

    pub fn s(&self) -> usize {
        self.s.unwrap_or(1)
    }

    pub fn max_roots(&self) -> usize {
        self.max_roots.unwrap_or(match self.code {
            CodeKind::Rs => DEFAULT_ROOT_CAP,
            CodeKind::Frs => DEFAULT_RECURSION_CAP,
        })
    }

    pub fn max_enumeration(&self) -> usize {
        self.max_enumeration.unwrap_or(DEFAULT_ENUMERATION_CAP)
    }

    pub fn oracle_budget(&self) -> u64 {
        self.oracle_budget.unwrap_or(DEFAULT_ORACLE_BUDGET)
    }

    /// Number of error positions: symbols for RS, columns for FRS.
    pub fn positions(&self) -> usize {
        match self.code {
            CodeKind::Rs => self.n,
            CodeKind::Frs => self.n / self.m().max(1),
        }
    }

    /// The error count, from `e` or derived from `t`.
    pub fn errors(&self) -> Result<usize, CliError> {
        match (self.e, self.t) {
            (Some(e), _) => Ok(e),
            (None, Some(t)) if t <= self.positions() => Ok(self.positions() - t),
            (None, Some(t)) => Err(CliError::validation(format!("t = {t} exceeds {} positions", self.positions()))),
            (None, None) => Err(CliError::validation("config needs e or t".into())),
        }
    }

    /// The agreement threshold, from `t` or derived from `e`.
    pub fn agreement(&self) -> Result<usize, CliError> {
        match (self.t, self.e) {
            (Some(t), _) => Ok(t),
            (None, Some(e)) if e <= self.positions() => Ok(self.positions() - e),
            (None, Some(e)) => Err(CliError::validation(format!("e = {e} exceeds {} positions", self.positions()))),
            (None, None) => Err(CliError::validation("config needs e or t".into())),
        }
    }
}
