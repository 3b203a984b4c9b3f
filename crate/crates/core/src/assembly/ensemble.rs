//! Ensembles of objects with copy numbers and the assembly equation
//! `A = sum_i exp(a_i) * (n_i - 1) / N`, with `N` the total copy count.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{assembly_index, AssemblyError};
use crate::string::AssemblyString;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleEntry {
    pub object: AssemblyString,
    pub copies: u64,
}

/// Distinct objects, each observed at least once.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    entries: Vec<EnsembleEntry>,
}

#[derive(Debug, Deserialize)]
struct RawEntry {
    object: String,
    copies: i64,
}

/// One evaluated term of the assembly equation.
#[derive(Debug, Clone, Serialize)]
pub struct TermReport {
    pub object: String,
    pub copies: u64,
    pub assembly_index: usize,
    pub term: f64,
}

impl Ensemble {
    pub fn new(entries: Vec<EnsembleEntry>) -> Result<Self, AssemblyError> {
        if entries.is_empty() {
            return Err(AssemblyError::InvalidEnsemble("no entries".into()));
        }
        let mut seen = HashSet::new();
        for e in &entries {
            if e.copies == 0 {
                return Err(AssemblyError::InvalidEnsemble(format!("{}: copy number must be >= 1", e.object)));
            }
            if !seen.insert(&e.object) {
                return Err(AssemblyError::InvalidEnsemble(format!("{}: listed twice", e.object)));
            }
        }
        Ok(Self { entries })
    }

    /// Convenience constructor from `(text, copies)` pairs.
    pub fn from_pairs(pairs: &[(&str, u64)]) -> Result<Self, AssemblyError> {
        let entries = pairs
            .iter()
            .map(|&(t, copies)| Ok(EnsembleEntry { object: AssemblyString::from_text(t)?, copies }))
            .collect::<Result<Vec<_>, AssemblyError>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[EnsembleEntry] {
        &self.entries
    }

    /// Total (non-unique) object count `N`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.copies).sum()
    }

    /// Parses CSV with header `object,copies`. Errors name the 1-based line.
    pub fn from_csv_str(text: &str) -> Result<Self, AssemblyError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| AssemblyError::InvalidEnsemble(format!("line 1: {e}")))?
            .clone();
        if headers.iter().map(str::trim).collect::<Vec<_>>() != ["object", "copies"] {
            return Err(AssemblyError::InvalidEnsemble(format!(
                "line 1: expected header `object,copies`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut raw = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                AssemblyError::InvalidEnsemble(format!("line {line}: {e}"))
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let copies = record[1]
                .trim()
                .parse::<i64>()
                .map_err(|e| AssemblyError::InvalidEnsemble(format!("line {line}: copies {:?}: {e}", &record[1])))?;
            raw.push((line, RawEntry { object: record[0].to_string(), copies }));
        }
        Self::from_raw(raw)
    }

    /// Parses a JSON array of `{"object": string, "copies": integer}`.
    pub fn from_json_str(text: &str) -> Result<Self, AssemblyError> {
        let raw: Vec<RawEntry> = serde_json::from_str(text)
            .map_err(|e| AssemblyError::InvalidEnsemble(format!("line {}: {e}", e.line())))?;
        Self::from_raw(raw.into_iter().enumerate().map(|(i, r)| (i + 1, r)).collect())
    }

    /// Picks JSON when the first non-blank character is `[`, CSV otherwise.
    pub fn parse(text: &str) -> Result<Self, AssemblyError> {
        if text.trim_start().starts_with('[') {
            Self::from_json_str(text)
        } else {
            Self::from_csv_str(text)
        }
    }

    fn from_raw(raw: Vec<(usize, RawEntry)>) -> Result<Self, AssemblyError> {
        let mut entries = Vec::with_capacity(raw.len());
        for (line, r) in raw {
            let object = AssemblyString::from_text(&r.object)
                .map_err(|_| AssemblyError::InvalidEnsemble(format!("line {line}: empty object")))?;
            if r.copies < 1 {
                return Err(AssemblyError::InvalidEnsemble(format!(
                    "line {line}: copies must be a positive integer, got {}",
                    r.copies
                )));
            }
            entries.push(EnsembleEntry { object, copies: r.copies as u64 });
        }
        Self::new(entries)
    }

    /// Per-entry terms of the assembly equation. Every index must be exact.
    pub fn terms(&self, length_cap: usize) -> Result<Vec<TermReport>, AssemblyError> {
        let total = self.total() as f64;
        self.entries
            .iter()
            .map(|e| {
                let r = assembly_index(&e.object, length_cap);
                if !r.exact {
                    return Err(AssemblyError::Inexact {
                        object: e.object.to_string(),
                        cap: length_cap,
                        lower: r.lower,
                        upper: r.upper,
                    });
                }
                let term = (r.index as f64).exp() * (e.copies - 1) as f64 / total;
                Ok(TermReport { object: e.object.to_string(), copies: e.copies, assembly_index: r.index, term })
            })
            .collect()
    }
}

/// Assembly `A` of an ensemble.
pub fn assembly_equation(ensemble: &Ensemble, length_cap: usize) -> Result<f64, AssemblyError> {
    Ok(ensemble.terms(length_cap)?.iter().map(|t| t.term).sum())
}
