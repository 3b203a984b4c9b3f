//! Longest single-symbol string reachable in `n` steps: LZW against assembly.

use serde::Serialize;

use super::ExperimentError;
use crate::assembly::assembly_index;
use crate::compression::{lzw_compress, lzw_longest_reachable};
use crate::string::{AssemblyString, Symbol};

/// Largest supported step count; the assembly row needs a `2^(n-1)`-symbol string.
pub const MAX_SCALING_STEPS: usize = 20;

/// String lengths drawn in the published LZW table for steps 1 to 5.
pub const PUBLISHED_LZW_LENGTHS: [usize; 5] = [1, 3, 7, 11, 15];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub steps: usize,
    /// `n(n+1)/2`.
    pub lzw_closed_form: usize,
    /// Longest single-symbol run that `lzw_compress` encodes in `steps` codes.
    pub lzw_measured: usize,
    pub lzw_published: Option<usize>,
    /// `None` when there is no published value for this row.
    pub lzw_published_agrees: Option<bool>,
    /// `2^(n-1)`.
    pub assembly_longest: usize,
    /// The run of `assembly_longest` symbols has index `n - 1` and one more
    /// symbol needs `n` joins.
    pub assembly_verified: bool,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// First step from which `assembly_longest / lzw_closed_form` strictly
    /// increases through the last row.
    pub ratio_increasing_from: Option<usize>,
    /// Every row's closed form matches the measured LZW length.
    pub closed_form_holds: bool,
    pub assembly_law_holds: bool,
}

fn run(len: usize) -> AssemblyString {
    AssemblyString::repeat(Symbol::from_char('z'), len).expect("positive length")
}

pub fn scaling_table(max_steps: usize) -> Result<ScalingTable, ExperimentError> {
    if !(1..=MAX_SCALING_STEPS).contains(&max_steps) {
        return Err(ExperimentError::InvalidConfig(format!(
            "steps must be between 1 and {MAX_SCALING_STEPS}, got {max_steps}"
        )));
    }
    let mut rows = Vec::with_capacity(max_steps);
    let mut len = 1;
    for n in 1..=max_steps {
        while lzw_compress(&run(len + 1)).code_count() <= n {
            len += 1;
        }
        let lzw_closed_form = lzw_longest_reachable(n as u64).expect("n >= 1") as usize;
        let lzw_published = PUBLISHED_LZW_LENGTHS.get(n - 1).copied();
        let assembly_longest = 1usize << (n - 1);
        let exact = |l: usize| assembly_index(&run(l), l).index;
        let assembly_verified = exact(assembly_longest) == n - 1 && exact(assembly_longest + 1) == n;
        rows.push(ScalingRow {
            steps: n,
            lzw_closed_form,
            lzw_measured: len,
            lzw_published,
            lzw_published_agrees: lzw_published.map(|p| p == len),
            assembly_longest,
            assembly_verified,
            ratio: assembly_longest as f64 / lzw_closed_form as f64,
        });
    }
    let mut from = rows.len();
    while from > 1 && rows[from - 2].ratio < rows[from - 1].ratio {
        from -= 1;
    }
    Ok(ScalingTable {
        ratio_increasing_from: (rows.len() >= 2 && from < rows.len()).then(|| rows[from - 1].steps),
        closed_form_holds: rows.iter().all(|r| r.lzw_closed_form == r.lzw_measured),
        assembly_law_holds: rows.iter().all(|r| r.assembly_verified),
        rows,
    })
}
