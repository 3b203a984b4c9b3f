//! Symbols and the strings built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assembly::AssemblyError;

/// A basic part. Symbols read from text carry their Unicode scalar value;
/// symbols read in byte mode carry the byte value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn from_char(c: char) -> Self {
        Symbol(c as u32)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn to_char(self) -> Option<char> {
        char::from_u32(self.0)
    }

    /// The symbol as unescaped text, for JSON and other escaping formats.
    pub fn raw_text(self) -> String {
        self.to_char().map_or_else(|| self.to_string(), String::from)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match char::from_u32(self.0) {
            Some(c) if !c.is_control() => write!(f, "{c}"),
            _ => write!(f, "\\u{{{:x}}}", self.0),
        }
    }
}

/// A non-empty sequence of symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssemblyString {
    symbols: Vec<Symbol>,
}

impl AssemblyString {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, AssemblyError> {
        if symbols.is_empty() {
            return Err(AssemblyError::Empty);
        }
        Ok(Self { symbols })
    }

    /// Interprets `text` as a sequence of Unicode scalar values.
    pub fn from_text(text: &str) -> Result<Self, AssemblyError> {
        Self::new(text.chars().map(Symbol::from_char).collect())
    }

    /// Interprets `bytes` as one symbol per byte.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, AssemblyError> {
        Self::new(bytes.iter().map(|&b| Symbol(u32::from(b))).collect())
    }

    /// Builds a string from raw token ids.
    pub fn from_tokens(tokens: &[u32]) -> Result<Self, AssemblyError> {
        Self::new(tokens.iter().copied().map(Symbol).collect())
    }

    /// `count` copies of `sym`.
    pub fn repeat(sym: Symbol, count: usize) -> Result<Self, AssemblyError> {
        Self::new(vec![sym; count])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn tokens(&self) -> Vec<u32> {
        self.symbols.iter().map(|s| s.0).collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_basic(&self) -> bool {
        self.symbols.len() == 1
    }

    pub fn reversed(&self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Self { symbols }
    }

    /// Applies a symbol relabeling.
    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> Self {
        Self { symbols: self.symbols.iter().map(|&s| f(s)).collect() }
    }

    /// Distinct symbols in ascending order.
    pub fn alphabet(&self) -> Vec<Symbol> {
        let mut syms = self.symbols.clone();
        syms.sort_unstable();
        syms.dedup();
        syms
    }
}

impl fmt::Display for AssemblyString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl AsRef<[Symbol]> for AssemblyString {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

/// Concatenation, the only joining operation.
pub fn join(left: &AssemblyString, right: &AssemblyString) -> AssemblyString {
    let mut symbols = Vec::with_capacity(left.len() + right.len());
    symbols.extend_from_slice(&left.symbols);
    symbols.extend_from_slice(&right.symbols);
    AssemblyString { symbols }
}
