use std::collections::HashSet;

use super::path::{AssemblyPath, ObjectRef};
use crate::string::{AssemblyString, Symbol};

/// `ceil(log2(len))`: the longest object grows at most twofold per join.
pub fn assembly_lower_bound(s: &AssemblyString) -> usize {
    ceil_log2(s.len())
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    debug_assert!(n > 0);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Number of distinct adjacent symbol pairs in `s`.
///
/// Every adjacent pair of the target sits on the seam of exactly one join in
/// any construction, and each join has exactly one seam, so this also bounds
/// the index from below.
pub(crate) fn distinct_pair_count(s: &[Symbol]) -> usize {
    s.windows(2).collect::<HashSet<_>>().len()
}

/// Factors in the greedy left-to-right parse of `s` into single symbols and
/// copies of text lying wholly before the factor.
///
/// Walking any pathway's join tree left to right and expanding only the first
/// occurrence of each object gives such a parse with `index + 1` leaves, and
/// the greedy parse has the fewest factors, so `count - 1` bounds the index.
pub(crate) fn copy_factor_count(s: &[Symbol]) -> usize {
    let n = s.len();
    let mut factors = 0;
    let mut i = 0;
    while i < n {
        let mut longest = 1;
        for j in 0..i {
            let limit = (i - j).min(n - i);
            let m = (0..limit).take_while(|&k| s[j + k] == s[i + k]).count();
            longest = longest.max(m);
        }
        factors += 1;
        i += longest;
    }
    factors
}

/// Longest string the quadratic copy-factor bound is computed for.
const COPY_BOUND_MAX_LEN: usize = 4096;

/// Best cheap lower bound. Stops early once it reaches `ceiling`, a known
/// upper bound.
pub(crate) fn combined_lower_bound(s: &AssemblyString, ceiling: usize) -> usize {
    let quick = assembly_lower_bound(s).max(distinct_pair_count(s.symbols()));
    if quick >= ceiling || s.len() > COPY_BOUND_MAX_LEN {
        return quick;
    }
    let copies = copy_factor_count(s.symbols()).max(copy_factor_count(s.reversed().symbols())) - 1;
    quick.max(copies)
}

/// A valid, not necessarily minimal, pathway built greedily.
///
/// The target is grown left to right. At each step the current prefix is
/// joined with the longest already-built object (the prefix itself included)
/// that matches the remainder, or with the next single symbol when nothing
/// longer matches. The same procedure runs on the mirrored string and the
/// shorter of the two paths wins (ties go to the forward path). The result is
/// never longer than `len - 1`.
pub fn assembly_upper_bound(s: &AssemblyString) -> (usize, AssemblyPath) {
    let forward = greedy_prefix_path(s.symbols());
    let mirrored = mirror_path(&greedy_prefix_path(s.reversed().symbols()));
    let best = if mirrored.len() < forward.len() { mirrored } else { forward };
    (best.len(), best)
}

fn greedy_prefix_path(target: &[Symbol]) -> AssemblyPath {
    let mut path = AssemblyPath::new();
    let mut current = ObjectRef::Basic(target[0]);
    let mut pos = 1;
    // Length of the prefix built by each step.
    let mut built: Vec<usize> = Vec::new();
    while pos < target.len() {
        let rest = &target[pos..];
        let mut best: Option<(usize, ObjectRef)> = None;
        // The current prefix is target[..pos]; earlier prefixes are target[..len].
        let candidates = built.iter().enumerate().map(|(i, &len)| (len, ObjectRef::Step(i)));
        let with_current = std::iter::once((pos, current)).chain(candidates);
        for (len, r) in with_current {
            if len >= 2 && len <= rest.len() && rest[..len] == target[..len] {
                if best.map_or(true, |(bl, _)| len > bl) {
                    best = Some((len, r));
                }
            }
        }
        let (len, operand) = best.unwrap_or((1, ObjectRef::Basic(rest[0])));
        let i = path.push(current, operand).expect("operands precede the step");
        pos += len;
        built.push(pos);
        current = ObjectRef::Step(i);
    }
    path
}

fn mirror_path(path: &AssemblyPath) -> AssemblyPath {
    let mut out = AssemblyPath::new();
    for step in path.steps() {
        out.push(step.right, step.left).expect("same reference structure");
    }
    out
}
