//! Two strings with identical Huffman coding but different assembly indices.

use serde::Serialize;

use crate::assembly::{assembly_index, oracle_assembly_index, DEFAULT_LENGTH_CAP};
use crate::compression::{
    assign_codes, build_frequency_table, build_huffman_tree, huffman_encode, shannon_entropy, BitString,
};
use crate::string::AssemblyString;

pub const SIMPLER: &str = "zbzbzc";
pub const HARDER: &str = "zzzbbc";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl CounterexampleReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &'static str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check { name, passed: expected == actual, expected, actual }
}

fn bits_as_string(bits: &BitString) -> AssemblyString {
    AssemblyString::from_text(&bits.to_string()).expect("encodings are non-empty")
}

/// Runs every check; failures are reported, never raised.
pub fn counterexample_suite() -> CounterexampleReport {
    let first = AssemblyString::from_text(SIMPLER).expect("non-empty");
    let second = AssemblyString::from_text(HARDER).expect("non-empty");
    let mut checks = vec![
        check("assembly index of zbzbzc", 4, assembly_index(&first, DEFAULT_LENGTH_CAP).index),
        check("assembly index of zzzbbc", 5, assembly_index(&second, DEFAULT_LENGTH_CAP).index),
    ];

    let table_1 = build_frequency_table(first.symbols()).expect("non-empty");
    let table_2 = build_frequency_table(second.symbols()).expect("non-empty");
    checks.push(check("identical frequency tables", true, table_1 == table_2));
    let tree_1 = build_huffman_tree(&table_1);
    let tree_2 = build_huffman_tree(&table_2);
    checks.push(check("identical Huffman trees", true, tree_1 == tree_2));
    let book_1 = assign_codes(&tree_1);
    let book_2 = assign_codes(&tree_2);
    checks.push(check("identical code books", true, book_1 == book_2));
    let codes: Vec<String> = book_1.iter().map(|(s, b)| format!("{s}:{b}")).collect();
    checks.push(check("code assignments", "b:01 c:00 z:1", codes.join(" ")));

    let enc_1 = huffman_encode(first.symbols(), &book_1).expect("book covers input");
    let enc_2 = huffman_encode(second.symbols(), &book_2).expect("book covers input");
    checks.push(check("encoding of zbzbzc", "101101100", &enc_1));
    checks.push(check("encoding of zzzbbc", "111010100", &enc_2));
    checks.push(check("equal encoded lengths", "9 9", format!("{} {}", enc_1.len(), enc_2.len())));
    let ones_zeros = |b: &BitString| format!("{}/{}", b.count_ones(), b.len() - b.count_ones());
    checks.push(check("ones/zeros in zbzbzc encoding", "5/4", ones_zeros(&enc_1)));
    checks.push(check("ones/zeros in zzzbbc encoding", "5/4", ones_zeros(&enc_2)));

    let (bits_1, bits_2) = (bits_as_string(&enc_1), bits_as_string(&enc_2));
    let entropy = |s: &AssemblyString| shannon_entropy(&build_frequency_table(s.symbols()).expect("non-empty"));
    checks.push(check("equal entropy of encodings", true, entropy(&bits_1) == entropy(&bits_2)));

    let a_1 = assembly_index(&bits_1, DEFAULT_LENGTH_CAP).index;
    let a_2 = assembly_index(&bits_2, DEFAULT_LENGTH_CAP).index;
    checks.push(check("encodings keep the ordering", true, a_1 < a_2));
    let oracle = (oracle_assembly_index(&bits_1).ok(), oracle_assembly_index(&bits_2).ok());
    checks.push(check(
        "oracle agrees on encodings",
        format!("{a_1} {a_2}"),
        format!("{} {}", opt(oracle.0), opt(oracle.1)),
    ));

    let all_passed = checks.iter().all(|c| c.passed);
    CounterexampleReport { checks, all_passed }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "n/a".into(), |v| v.to_string())
}
