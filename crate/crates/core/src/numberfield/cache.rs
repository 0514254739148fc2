//! Versioned JSON cache of per-discriminant class tables and prime splittings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ClassGroup, NumberField, PrimeRef, PrimeSplitting, SplitType};
use crate::error::{Error, Result};

pub const CACHE_SCHEMA: &str = "adelic-orbit-cache/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub label: PrimeRef,
    pub residue_degree: u8,
    pub ramification: u8,
    pub pi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRecord {
    pub p: u64,
    pub kind: SplitType,
    pub primes: Vec<PrimeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCacheRecord {
    pub discriminant: i64,
    pub class_group: ClassGroup,
    /// Largest rational prime whose splitting is recorded.
    pub bound: u64,
    pub primes: Vec<SplittingRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema: String,
    /// Keyed by the discriminant in decimal.
    pub fields: BTreeMap<String, FieldCacheRecord>,
}

impl CacheFile {
    pub fn empty() -> Self {
        Self {
            schema: CACHE_SCHEMA.to_string(),
            fields: BTreeMap::new(),
        }
    }

    /// Reads a cache file. A missing file, unreadable JSON or a different
    /// schema tag all yield an empty cache so the data is recomputed.
    pub fn load(path: &Path) -> Self {
        let Ok(text) = fs::read_to_string(path) else {
            return Self::empty();
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(c) if c.schema == CACHE_SCHEMA => c,
            _ => Self::empty(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))?;
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir).map_err(|e| Error::Internal(e.to_string()))?;
            }
        }
        fs::write(path, text).map_err(|e| Error::Internal(format!("{}: {e}", path.display())))
    }
}

impl NumberField {
    pub fn cache_record(&self) -> FieldCacheRecord {
        let splittings = self.cached_splittings();
        FieldCacheRecord {
            discriminant: self.discriminant(),
            class_group: self.class_group().clone(),
            bound: splittings.last().map_or(0, |s| s.p),
            primes: splittings
                .iter()
                .map(|s| SplittingRecord {
                    p: s.p,
                    kind: s.kind,
                    primes: s
                        .primes
                        .iter()
                        .map(|q| PrimeRecord {
                            label: q.id,
                            residue_degree: q.residue_degree,
                            ramification: q.ramification,
                            pi: q.pi.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Seeds the caches from a record. Records for another discriminant are
    /// rejected.
    pub fn load_cache_record(&self, rec: &FieldCacheRecord) -> Result<()> {
        if rec.discriminant != self.discriminant() {
            return Err(Error::InvalidField(format!(
                "cache record for discriminant {} used with {}",
                rec.discriminant,
                self.discriminant()
            )));
        }
        for s in &rec.primes {
            let primes = s
                .primes
                .iter()
                .map(|q| self.make_prime(q.label, q.residue_degree, q.ramification, q.pi.parse()?))
                .collect::<Result<Vec<_>>>()?;
            self.insert_splitting(PrimeSplitting {
                p: s.p,
                kind: s.kind,
                primes,
            });
        }
        self.set_class_group(rec.class_group.clone());
        Ok(())
    }
}
