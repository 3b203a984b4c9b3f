//! Greedy LZW over the symbols actually present in the input.
//!
//! The dictionary starts with the distinct input symbols in ascending order
//! (codes `0..k`). Reading left to right, the longest dictionary match is
//! emitted and the match extended by the next symbol becomes a new entry.
//! There is no dictionary size cap.

use std::collections::{BTreeMap, HashMap};

use super::CodecError;
use crate::string::{AssemblyString, Symbol};

/// Indexed table of strings, grown one entry per emitted code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LzwDictionary {
    entries: Vec<Vec<Symbol>>,
}

impl LzwDictionary {
    fn seeded(alphabet: &[Symbol]) -> Self {
        Self { entries: alphabet.iter().map(|&s| vec![s]).collect() }
    }

    pub fn entries(&self) -> &[Vec<Symbol>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index (as text) to entry text, for JSON output.
    pub fn to_json_map(&self) -> BTreeMap<usize, String> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (i, e.iter().map(|s| s.raw_text()).collect()))
            .collect()
    }
}

/// Output of [`lzw_compress`]: the code sequence plus what a decoder needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedStream {
    /// Initial dictionary, ascending.
    pub alphabet: Vec<Symbol>,
    pub codes: Vec<u32>,
    pub final_dict_size: usize,
}

impl CompressedStream {
    pub fn code_count(&self) -> usize {
        self.codes.len()
    }

    /// `ceil(log2(final_dict_size))`, at least 1.
    pub fn bit_width(&self) -> u32 {
        let size = self.final_dict_size.max(2);
        usize::BITS - (size - 1).leading_zeros()
    }

    /// Bytes needed to pack every code at [`CompressedStream::bit_width`] bits.
    pub fn byte_size(&self) -> usize {
        (self.code_count() * self.bit_width() as usize).div_ceil(8)
    }
}

pub fn lzw_compress(s: &AssemblyString) -> CompressedStream {
    lzw_compress_with_dictionary(s).0
}

pub fn lzw_compress_with_dictionary(s: &AssemblyString) -> (CompressedStream, LzwDictionary) {
    let alphabet = s.alphabet();
    let mut dict = LzwDictionary::seeded(&alphabet);
    let mut index: HashMap<Vec<Symbol>, u32> =
        dict.entries.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
    let mut codes = Vec::new();
    let mut current: Vec<Symbol> = Vec::new();
    for &sym in s.symbols() {
        current.push(sym);
        if index.contains_key(&current) {
            continue;
        }
        let extended = current.clone();
        current.pop();
        codes.push(index[&current]);
        index.insert(extended.clone(), dict.entries.len() as u32);
        dict.entries.push(extended);
        current.clear();
        current.push(sym);
    }
    codes.push(index[&current]);
    let stream = CompressedStream { alphabet, codes, final_dict_size: dict.len() };
    (stream, dict)
}

pub fn lzw_decompress(stream: &CompressedStream) -> Result<AssemblyString, CodecError> {
    if stream.alphabet.is_empty() {
        return Err(CodecError::MalformedStream("empty initial alphabet".into()));
    }
    if stream.alphabet.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CodecError::MalformedStream("initial alphabet must be strictly ascending".into()));
    }
    let Some((&first, rest)) = stream.codes.split_first() else {
        return Err(CodecError::Empty);
    };
    let mut dict = LzwDictionary::seeded(&stream.alphabet);
    let lookup = |dict: &LzwDictionary, code: u32, position: usize| {
        dict.entries
            .get(code as usize)
            .cloned()
            .ok_or(CodecError::CodeOutOfRange { code, position, size: dict.len() })
    };
    let mut previous = lookup(&dict, first, 0)?;
    let mut out = previous.clone();
    for (i, &code) in rest.iter().enumerate() {
        let entry = if (code as usize) == dict.len() {
            // The code being defined right now: previous + its own first symbol.
            let mut e = previous.clone();
            e.push(previous[0]);
            e
        } else {
            lookup(&dict, code, i + 1)?
        };
        let mut added = previous;
        added.push(entry[0]);
        dict.entries.push(added);
        out.extend_from_slice(&entry);
        previous = entry;
    }
    if dict.len() != stream.final_dict_size {
        return Err(CodecError::MalformedStream(format!(
            "stream declares {} dictionary entries, decoding produced {}",
            stream.final_dict_size,
            dict.len()
        )));
    }
    Ok(AssemblyString::new(out).expect("at least one code decoded"))
}

/// `n(n+1)/2`: the longest run of one symbol that LZW encodes in `n` codes.
pub fn lzw_longest_reachable(n: u64) -> Result<u64, CodecError> {
    if n < 1 {
        return Err(CodecError::ZeroSteps);
    }
    Ok(n * (n + 1) / 2)
}
