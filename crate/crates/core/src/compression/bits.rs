use std::fmt;
use std::str::FromStr;

use super::CodecError;

/// A sequence of bits.
///
/// Packed form: one byte holding the number of zero pad bits, followed by
/// the bits most-significant first, zero-padded to a byte boundary.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn starts_with(&self, other: &BitString) -> bool {
        self.bits.starts_with(&other.bits)
    }

    pub fn to_packed(&self) -> Vec<u8> {
        let pad = (8 - self.bits.len() % 8) % 8;
        let mut out = Vec::with_capacity(1 + self.bits.len().div_ceil(8));
        out.push(pad as u8);
        for chunk in self.bits.chunks(8) {
            let byte = chunk.iter().enumerate().fold(0u8, |b, (i, &bit)| b | (u8::from(bit) << (7 - i)));
            out.push(byte);
        }
        out
    }

    pub fn from_packed(bytes: &[u8]) -> Result<Self, CodecError> {
        let (&pad, body) = bytes.split_first().ok_or_else(|| CodecError::BadPacking("missing pad byte".into()))?;
        if pad > 7 || (body.is_empty() && pad != 0) {
            return Err(CodecError::BadPacking(format!("pad length {pad}")));
        }
        let mut bits: Vec<bool> = body.iter().flat_map(|&b| (0..8).map(move |i| b >> (7 - i) & 1 == 1)).collect();
        let keep = bits.len() - pad as usize;
        if bits[keep..].iter().any(|&b| b) {
            return Err(CodecError::BadPacking("non-zero pad bits".into()));
        }
        bits.truncate(keep);
        Ok(Self { bits })
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self { bits: iter.into_iter().collect() }
    }
}

impl FromStr for BitString {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodecError::BadBitChar(other)),
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
