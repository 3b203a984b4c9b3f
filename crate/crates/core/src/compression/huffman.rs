//! Huffman coding with a fully determined merge order.
//!
//! Nodes are popped by ascending count. Ties go to the node with the higher
//! creation rank, where leaves are ranked first in descending symbol order and
//! every merged node gets the next rank. So on equal counts a merged node
//! beats any leaf, a newer merged node beats an older one, and among leaves
//! the smaller symbol goes first. The first node popped in a merge becomes the
//! left child (bit 0), the second the right child (bit 1).
//!
//! For the counts `{z: 3, b: 2, c: 1}` this merges `(c, b)` and then
//! `((c b), z)`, giving `z -> 1`, `b -> 01`, `c -> 00`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::Serialize;

use super::{BitString, CodecError, FrequencyTable};
use crate::string::{AssemblyString, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HuffmanNode {
    Leaf { symbol: Symbol, count: u64 },
    Internal { left: Box<HuffmanNode>, right: Box<HuffmanNode>, count: u64, rank: usize },
}

impl HuffmanNode {
    pub fn count(&self) -> u64 {
        match self {
            HuffmanNode::Leaf { count, .. } | HuffmanNode::Internal { count, .. } => *count,
        }
    }

    fn leaves(&self) -> usize {
        match self {
            HuffmanNode::Leaf { .. } => 1,
            HuffmanNode::Internal { left, right, .. } => left.leaves() + right.leaves(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanTree {
    root: HuffmanNode,
}

impl HuffmanTree {
    pub fn root(&self) -> &HuffmanNode {
        &self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaves()
    }

    /// Rebuilds the decoding tree of a prefix-free codebook. Counts are not
    /// recoverable from codes and are set to zero.
    pub fn from_codebook(book: &CodeBook) -> Result<Self, CodecError> {
        book.check_prefix_free()?;
        let mut codes: Vec<(&BitString, Symbol)> = book.codes.iter().map(|(s, c)| (c, *s)).collect();
        if codes.is_empty() {
            return Err(CodecError::Empty);
        }
        if let [(code, symbol)] = codes[..] {
            // A lone symbol has no branch to follow.
            if code.len() != 1 || code.bits()[0] {
                return Err(CodecError::NotPrefixFree(format!("single symbol {symbol} must use code 0")));
            }
            return Ok(Self { root: HuffmanNode::Leaf { symbol, count: 0 } });
        }
        codes.sort();
        let mut rank = 0;
        let root = subtree(&codes, 0, &mut rank)?;
        Ok(Self { root })
    }
}

fn subtree(codes: &[(&BitString, Symbol)], depth: usize, rank: &mut usize) -> Result<HuffmanNode, CodecError> {
    match codes {
        [(code, symbol)] if code.len() == depth => Ok(HuffmanNode::Leaf { symbol: *symbol, count: 0 }),
        _ => {
            if codes.iter().any(|(c, _)| c.len() <= depth) {
                return Err(CodecError::NotPrefixFree("code ends at an internal node".into()));
            }
            let split = codes.partition_point(|(c, _)| !c.bits()[depth]);
            let (zeros, ones) = codes.split_at(split);
            if zeros.is_empty() || ones.is_empty() {
                return Err(CodecError::NotPrefixFree("codebook does not describe a full binary tree".into()));
            }
            let left = subtree(zeros, depth + 1, rank)?;
            let right = subtree(ones, depth + 1, rank)?;
            *rank += 1;
            Ok(HuffmanNode::Internal { left: Box::new(left), right: Box::new(right), count: 0, rank: *rank })
        }
    }
}

/// Prefix-free map from symbols to bit codes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CodeBook {
    codes: BTreeMap<Symbol, BitString>,
}

impl CodeBook {
    pub fn get(&self, sym: Symbol) -> Option<&BitString> {
        self.codes.get(&sym)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &BitString)> {
        self.codes.iter().map(|(s, c)| (*s, c))
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// `sum 2^-len` as an exact fraction `(numerator, 2^max_len)`.
    pub fn kraft_sum(&self) -> (u128, u128) {
        let max = self.codes.values().map(BitString::len).max().unwrap_or(0);
        let denom = 1u128 << max;
        let num = self.codes.values().map(|c| 1u128 << (max - c.len())).sum();
        (num, denom)
    }

    pub fn check_prefix_free(&self) -> Result<(), CodecError> {
        for (a, ca) in &self.codes {
            for (b, cb) in &self.codes {
                if a != b && cb.starts_with(ca) {
                    return Err(CodecError::NotPrefixFree(format!("{a} -> {ca} prefixes {b} -> {cb}")));
                }
            }
        }
        Ok(())
    }

    /// Symbol (as text) to code string, for JSON output.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.codes.iter().map(|(s, c)| (s.raw_text(), c.to_string())).collect()
    }

    /// Inverse of [`CodeBook::to_json_map`]. Each key must be one symbol.
    pub fn from_json_map(map: &BTreeMap<String, String>) -> Result<Self, CodecError> {
        let mut codes = BTreeMap::new();
        for (k, v) in map {
            let mut chars = k.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(CodecError::NotPrefixFree(format!("key {k:?} is not a single symbol")));
            };
            codes.insert(Symbol::from_char(c), v.parse()?);
        }
        let book = Self { codes };
        book.check_prefix_free()?;
        Ok(book)
    }
}

impl Serialize for CodeBook {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_map().serialize(serializer)
    }
}

pub fn build_huffman_tree(table: &FrequencyTable) -> HuffmanTree {
    let distinct = table.distinct();
    let mut heap = BinaryHeap::new();
    let mut nodes: Vec<Option<HuffmanNode>> = Vec::new();
    // Ascending symbol order gets descending ranks.
    for (i, (symbol, count)) in table.iter().enumerate() {
        let rank = distinct - 1 - i;
        heap.push(Reverse((count, Reverse(rank), nodes.len())));
        nodes.push(Some(HuffmanNode::Leaf { symbol, count }));
    }
    let mut next_rank = distinct;
    while heap.len() > 1 {
        let Reverse((lc, _, li)) = heap.pop().expect("len > 1");
        let Reverse((rc, _, ri)) = heap.pop().expect("len > 1");
        let left = nodes[li].take().expect("popped once");
        let right = nodes[ri].take().expect("popped once");
        let count = lc + rc;
        let rank = next_rank;
        next_rank += 1;
        heap.push(Reverse((count, Reverse(rank), nodes.len())));
        nodes.push(Some(HuffmanNode::Internal { left: Box::new(left), right: Box::new(right), count, rank }));
    }
    let Reverse((_, _, root)) = heap.pop().expect("frequency tables are non-empty");
    HuffmanTree { root: nodes[root].take().expect("root") }
}

pub fn assign_codes(tree: &HuffmanTree) -> CodeBook {
    let mut codes = BTreeMap::new();
    match &tree.root {
        HuffmanNode::Leaf { symbol, .. } => {
            codes.insert(*symbol, std::iter::once(false).collect());
        }
        root => walk(root, &mut BitString::new(), &mut codes),
    }
    CodeBook { codes }
}

fn walk(node: &HuffmanNode, prefix: &mut BitString, codes: &mut BTreeMap<Symbol, BitString>) {
    match node {
        HuffmanNode::Leaf { symbol, .. } => {
            codes.insert(*symbol, prefix.clone());
        }
        HuffmanNode::Internal { left, right, .. } => {
            for (bit, child) in [(false, left), (true, right)] {
                let mut next = prefix.clone();
                next.push(bit);
                walk(child, &mut next, codes);
            }
        }
    }
}

pub fn huffman_encode(s: &[Symbol], book: &CodeBook) -> Result<BitString, CodecError> {
    let mut out = BitString::new();
    for &sym in s {
        out.extend(book.get(sym).ok_or(CodecError::UnknownSymbol(sym))?);
    }
    Ok(out)
}

pub fn huffman_decode(bits: &BitString, tree: &HuffmanTree) -> Result<AssemblyString, CodecError> {
    if bits.is_empty() {
        return Err(CodecError::Empty);
    }
    let mut out = Vec::new();
    if let HuffmanNode::Leaf { symbol, .. } = tree.root {
        for (position, &b) in bits.bits().iter().enumerate() {
            if b {
                return Err(CodecError::UnmatchedBits { position });
            }
            out.push(symbol);
        }
    } else {
        let mut node = &tree.root;
        for &b in bits.bits() {
            if let HuffmanNode::Internal { left, right, .. } = node {
                node = if b { right } else { left };
            }
            if let HuffmanNode::Leaf { symbol, .. } = node {
                out.push(*symbol);
                node = &tree.root;
            }
        }
        if !std::ptr::eq(node, &tree.root) {
            return Err(CodecError::DanglingBits(bits.len()));
        }
    }
    Ok(AssemblyString::new(out).expect("at least one bit decoded"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::build_frequency_table;

    fn syms(text: &str) -> Vec<Symbol> {
        text.chars().map(Symbol::from_char).collect()
    }

    fn book_of(text: &str) -> (HuffmanTree, CodeBook) {
        let tree = build_huffman_tree(&build_frequency_table(&syms(text)).unwrap());
        let book = assign_codes(&tree);
        (tree, book)
    }

    fn codes(book: &CodeBook) -> Vec<(char, String)> {
        book.iter().map(|(s, c)| (char::from_u32(s.id()).unwrap(), c.to_string())).collect()
    }

    #[test]
    fn worked_codebook() {
        let (tree, book) = book_of("zbzbzc");
        assert_eq!(codes(&book), vec![('b', "01".into()), ('c', "00".into()), ('z', "1".into())]);
        let HuffmanNode::Internal { left, right, count: 6, .. } = tree.root() else { panic!() };
        assert!(matches!(**right, HuffmanNode::Leaf { count: 3, .. }));
        let HuffmanNode::Internal { left: c, right: b, count: 3, .. } = &**left else { panic!() };
        assert_eq!(**c, HuffmanNode::Leaf { symbol: Symbol::from_char('c'), count: 1 });
        assert_eq!(**b, HuffmanNode::Leaf { symbol: Symbol::from_char('b'), count: 2 });
    }

    #[test]
    fn worked_bitstreams() {
        let (tree, book) = book_of("zbzbzc");
        let a = huffman_encode(&syms("zbzbzc"), &book).unwrap();
        let b = huffman_encode(&syms("zzzbbc"), &book).unwrap();
        assert_eq!(a.to_string(), "101101100");
        assert_eq!(b.to_string(), "111010100");
        assert_eq!(huffman_decode(&a, &tree).unwrap().to_string(), "zbzbzc");
        assert_eq!(huffman_decode(&b, &tree).unwrap().to_string(), "zzzbbc");
    }

    #[test]
    fn two_symbols_follow_symbol_order() {
        let (tree, book) = book_of("ab");
        assert_eq!(codes(&book), vec![('a', "0".into()), ('b', "1".into())]);
        assert_eq!(tree.leaf_count(), 2);
    }

    #[test]
    fn single_symbol_uses_zero() {
        let (tree, book) = book_of("qqqqq");
        assert_eq!(codes(&book), vec![('q', "0".into())]);
        assert!(matches!(tree.root(), HuffmanNode::Leaf { count: 5, .. }));
        let bits = huffman_encode(&syms("qqq"), &book).unwrap();
        assert_eq!(bits.to_string(), "000");
        assert_eq!(huffman_decode(&bits, &tree).unwrap().to_string(), "qqq");
        assert!(huffman_decode(&"01".parse().unwrap(), &tree).is_err());
    }

    #[test]
    fn decode_errors() {
        let (tree, book) = book_of("zbzbzc");
        assert_eq!(huffman_decode(&BitString::new(), &tree), Err(CodecError::Empty));
        assert!(matches!(huffman_decode(&"10".parse().unwrap(), &tree), Err(CodecError::DanglingBits(_))));
        assert_eq!(huffman_encode(&syms("zx"), &book), Err(CodecError::UnknownSymbol(Symbol::from_char('x'))));
    }

    #[test]
    fn codebook_json_rebuilds_tree() {
        let (tree, book) = book_of("zbzbzc");
        let back = CodeBook::from_json_map(&book.to_json_map()).unwrap();
        assert_eq!(back, book);
        let rebuilt = HuffmanTree::from_codebook(&back).unwrap();
        let bits: BitString = "111010100".parse().unwrap();
        assert_eq!(huffman_decode(&bits, &rebuilt).unwrap(), huffman_decode(&bits, &tree).unwrap());
    }

    #[test]
    fn rejects_non_prefix_free_books() {
        let map: BTreeMap<String, String> = [("a".into(), "0".into()), ("b".into(), "01".into())].into();
        assert!(CodeBook::from_json_map(&map).is_err());
        let map: BTreeMap<String, String> = [("a".into(), "00".into()), ("b".into(), "1".into())].into();
        let book = CodeBook::from_json_map(&map).unwrap();
        assert!(HuffmanTree::from_codebook(&book).is_err());
    }

    #[test]
    fn kraft_sum_is_one() {
        for text in ["zbzbzc", "abcdefgh", "aaaaaaabbbcd", "ab"] {
            let (_, book) = book_of(text);
            let (num, den) = book.kraft_sum();
            assert_eq!(num, den, "{text}");
        }
    }
}
