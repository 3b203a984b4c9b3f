//! Comparator measures: Huffman coding, LZW compression and Shannon entropy.

mod bits;
mod entropy;
mod frequency;
mod huffman;
mod lzw;

pub use bits::BitString;
pub use entropy::shannon_entropy;
pub use frequency::{build_frequency_table, FrequencyTable};
pub use huffman::{assign_codes, build_huffman_tree, huffman_decode, huffman_encode, CodeBook, HuffmanNode, HuffmanTree};
pub use lzw::{
    lzw_compress, lzw_compress_with_dictionary, lzw_decompress, lzw_longest_reachable, CompressedStream,
    LzwDictionary,
};

use thiserror::Error;

use crate::string::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("empty input")]
    Empty,
    #[error("symbol {0} has no code in the codebook")]
    UnknownSymbol(Symbol),
    #[error("bit stream ends inside a code after {0} bits")]
    DanglingBits(usize),
    #[error("bit {position} does not continue any code")]
    UnmatchedBits { position: usize },
    #[error("invalid bit character {0:?}")]
    BadBitChar(char),
    #[error("packed stream is malformed: {0}")]
    BadPacking(String),
    #[error("codebook is not prefix-free: {0}")]
    NotPrefixFree(String),
    #[error("code {code} at position {position} is out of range (dictionary has {size} entries)")]
    CodeOutOfRange { code: u32, position: usize, size: usize },
    #[error("malformed LZW stream: {0}")]
    MalformedStream(String),
    #[error("step count must be at least 1")]
    ZeroSteps,
}
