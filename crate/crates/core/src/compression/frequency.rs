use std::collections::BTreeMap;

use super::CodecError;
use crate::string::{AssemblyString, Symbol};

/// Occurrence count of every symbol in a string. All counts are positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequencyTable {
    counts: BTreeMap<Symbol, u64>,
}

impl FrequencyTable {
    pub fn from_counts(counts: impl IntoIterator<Item = (Symbol, u64)>) -> Result<Self, CodecError> {
        let counts: BTreeMap<Symbol, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        if counts.is_empty() {
            return Err(CodecError::Empty);
        }
        Ok(Self { counts })
    }

    /// Counts in ascending symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (Symbol, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    pub fn get(&self, sym: Symbol) -> Option<u64> {
        self.counts.get(&sym).copied()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

pub fn build_frequency_table(s: &[Symbol]) -> Result<FrequencyTable, CodecError> {
    let mut counts = BTreeMap::new();
    for &sym in s {
        *counts.entry(sym).or_insert(0) += 1;
    }
    FrequencyTable::from_counts(counts)
}

impl From<&AssemblyString> for FrequencyTable {
    fn from(s: &AssemblyString) -> Self {
        build_frequency_table(s.symbols()).expect("assembly strings are non-empty")
    }
}
