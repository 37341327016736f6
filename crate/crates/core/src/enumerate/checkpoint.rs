//! Resumable progress files.
//!
//! A checkpoint records the run header, the indices of finished work units
//! and the classes found so far. It is written to a temporary file and then
//! renamed over the previous one.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EnumerationConfig, EnumerationError, Equivalence, SearchStatistics};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub version: u32,
    pub m: usize,
    pub dim: usize,
    pub equivalence: Equivalence,
    pub symmetry_breaking: bool,
    pub split_depth: usize,
    pub units: usize,
}

impl Header {
    pub(crate) fn new(cfg: &EnumerationConfig, units: usize) -> Self {
        Header {
            version: CHECKPOINT_VERSION,
            m: cfg.m,
            dim: cfg.dim,
            equivalence: cfg.equivalence,
            symmetry_breaking: cfg.symmetry_breaking,
            split_depth: cfg.split_depth,
            units,
        }
    }

    pub(crate) fn check_matches(&self, current: &Header) -> Result<(), EnumerationError> {
        if self != current {
            return Err(EnumerationError::Mismatch(format!(
                "saved {self:?}, current {current:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub header: Header,
    pub completed: Vec<usize>,
    /// Canonical form serial and least sorted orbit-index list per class.
    pub classes: Vec<(String, Vec<u32>)>,
    pub stats: SearchStatistics,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self, EnumerationError> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), EnumerationError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
