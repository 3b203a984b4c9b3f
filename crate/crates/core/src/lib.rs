//! Exact assembly indices of strings, and the measures they are usually
//! compared against: Huffman coding, LZW compression and Shannon entropy.

pub mod assembly;
pub mod compression;
pub mod experiments;
pub mod string;

pub use string::{join, AssemblyString, Symbol};
