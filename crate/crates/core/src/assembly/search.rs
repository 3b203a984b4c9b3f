//! Exact assembly index by iterative deepening.
//!
//! A pathway is equivalent to a set `S` of non-basic substrings of the target
//! (the target included) in which every member splits into two parts that are
//! each basic or in `S`. Sorting `S` by length yields a valid join order, and
//! the index is the minimum `|S|`. The search grows `S` top-down from the
//! target: it repeatedly picks an unresolved member, commits to one of its
//! split points, and adds whichever parts are new. Members of a minimal set
//! are all reachable this way, so exhausting a budget proves no set of that
//! size exists.
//!
//! Pruning uses three facts. Each member contributes exactly one seam (the
//! adjacent pair straddling its split), and every adjacent pair of the target
//! must be some member's seam. A member parses into single symbols, copies of
//! its own earlier text and other members, and the parse has at most two
//! factors more than the members still needed to build it. And a member is
//! only ever resolved by the first of its splits whose parts all end up in
//! the set, since any later one describes the same set.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::bounds::{assembly_upper_bound, combined_lower_bound};
use super::canon::canonicalize_with_labels;
use super::path::{AssemblyPath, ObjectRef};
use crate::string::{AssemblyString, Symbol};

/// Longest string searched exactly unless the caller raises the cap.
pub const DEFAULT_LENGTH_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyResult {
    /// The exact index when `exact`, otherwise `upper`.
    pub index: usize,
    pub witness: AssemblyPath,
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
}

/// Assembly index of `s`. Exact whenever `s.len() <= length_cap`, and beyond
/// the cap when the lower and upper bounds meet.
///
/// Exact results are memoized process-wide on the canonical relabeling of
/// `s`, so a string and any renaming of it share one search. Cached and
/// uncached calls return identical results.
pub fn assembly_index(s: &AssemblyString, length_cap: usize) -> AssemblyResult {
    if s.len() > length_cap || s.is_basic() {
        return assembly_index_uncached(s, length_cap);
    }
    let (canon, labels) = canonicalize_with_labels(s);
    let key = canon.tokens();
    let cache = cache();
    let hit = cache.read().expect("cache lock poisoned").get(&key).cloned();
    let found = match hit {
        Some(r) => r,
        None => {
            let r = assembly_index_uncached(&canon, length_cap);
            cache.write().expect("cache lock poisoned").insert(key, r.clone());
            r
        }
    };
    AssemblyResult {
        witness: found.witness.map_symbols(|t| labels[t.0 as usize]),
        ..found
    }
}

/// Drops every memoized result. Later calls recompute them.
pub fn clear_assembly_cache() {
    cache().write().expect("cache lock poisoned").clear();
}

fn cache() -> &'static RwLock<HashMap<Vec<u32>, AssemblyResult>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<u32>, AssemblyResult>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Same as [`assembly_index`] without touching the memo table.
pub fn assembly_index_uncached(s: &AssemblyString, length_cap: usize) -> AssemblyResult {
    let (upper, greedy) = assembly_upper_bound(s);
    let lower = combined_lower_bound(s, upper);
    if lower >= upper {
        return AssemblyResult { index: upper, witness: greedy, exact: true, lower, upper };
    }
    if s.len() > length_cap {
        return AssemblyResult { index: upper, witness: greedy, exact: false, lower, upper };
    }
    let problem = Problem::new(s.symbols());
    for budget in lower..upper {
        if let Some(witness) = Search::new(&problem, budget).run() {
            return AssemblyResult { index: budget, witness, exact: true, lower, upper };
        }
    }
    AssemblyResult { index: upper, witness: greedy, exact: true, lower, upper }
}

#[derive(Debug, Clone, Copy)]
struct Split {
    left: usize,
    right: usize,
    seam: usize,
}

/// A stretch `begin..end` of a substring that is itself the substring `part`.
#[derive(Debug, Clone, Copy)]
struct Window {
    begin: usize,
    end: usize,
    part: usize,
    /// `part` also occurs wholly before `begin`.
    copy: bool,
}

/// Distinct substrings of the target, interned by length then position.
struct Problem {
    symbols: Vec<Symbol>,
    start: Vec<usize>,
    len: Vec<usize>,
    splits: Vec<Vec<Split>>,
    /// For each substring, the `(owner, split)` pairs it is a part of.
    uses: Vec<Vec<(usize, usize)>>,
    /// For each substring, its windows of length two or more, by end offset.
    windows: Vec<Vec<Window>>,
    seam_count: usize,
    target: usize,
}

impl Problem {
    fn new(symbols: &[Symbol]) -> Self {
        let n = symbols.len();
        let mut ids: HashMap<&[Symbol], usize> = HashMap::new();
        let mut start = Vec::new();
        let mut len = Vec::new();
        for l in 1..=n {
            for i in 0..=n - l {
                ids.entry(&symbols[i..i + l]).or_insert_with(|| {
                    start.push(i);
                    len.push(l);
                    start.len() - 1
                });
            }
        }
        let mut seams: HashMap<usize, usize> = HashMap::new();
        for w in 0..n.saturating_sub(1) {
            let id = ids[&symbols[w..w + 2]];
            let next = seams.len();
            seams.entry(id).or_insert(next);
        }
        let splits: Vec<Vec<Split>> = (0..start.len())
            .map(|id| {
                let (s, l) = (start[id], len[id]);
                (1..l)
                    .map(|k| Split {
                        left: ids[&symbols[s..s + k]],
                        right: ids[&symbols[s + k..s + l]],
                        seam: seams[&ids[&symbols[s + k - 1..s + k + 1]]],
                    })
                    .collect()
            })
            .collect();
        let mut uses: Vec<Vec<(usize, usize)>> = vec![Vec::new(); start.len()];
        for (owner, list) in splits.iter().enumerate() {
            for (j, sp) in list.iter().enumerate() {
                uses[sp.left].push((owner, j));
                if sp.right != sp.left {
                    uses[sp.right].push((owner, j));
                }
            }
        }
        let windows = (0..start.len())
            .map(|id| {
                let (s, l) = (start[id], len[id]);
                let mut first_start: HashMap<usize, usize> = HashMap::new();
                for begin in 0..l {
                    for end in begin + 2..=l {
                        first_start.entry(ids[&symbols[s + begin..s + end]]).or_insert(begin);
                    }
                }
                let mut out = Vec::new();
                for end in 2..=l {
                    for begin in 0..end - 1 {
                        let part = ids[&symbols[s + begin..s + end]];
                        if part == id {
                            continue;
                        }
                        let first = first_start[&part];
                        out.push(Window { begin, end, part, copy: first + (end - begin) <= begin });
                    }
                }
                out
            })
            .collect();
        let target = ids[symbols];
        Self { symbols: symbols.to_vec(), start, len, splits, uses, windows, seam_count: seams.len(), target }
    }

    fn is_basic(&self, id: usize) -> bool {
        self.len[id] == 1
    }

    fn text(&self, id: usize) -> &[Symbol] {
        &self.symbols[self.start[id]..self.start[id] + self.len[id]]
    }
}

struct Search<'a> {
    p: &'a Problem,
    budget: usize,
    in_set: Vec<bool>,
    size: usize,
    unresolved: Vec<usize>,
    chosen: Vec<Option<usize>>,
    cover: Vec<u32>,
    uncovered: usize,
    seam_mark: Vec<u32>,
    stamp: u32,
    scratch: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem, budget: usize) -> Self {
        let ids = p.len.len();
        let mut in_set = vec![false; ids];
        in_set[p.target] = true;
        Self {
            p,
            budget,
            in_set,
            size: 1,
            unresolved: vec![p.target],
            chosen: vec![None; ids],
            cover: vec![0; p.seam_count],
            uncovered: p.seam_count,
            seam_mark: vec![0; p.seam_count],
            stamp: 0,
            scratch: Vec::new(),
        }
    }

    fn run(mut self) -> Option<AssemblyPath> {
        if self.dfs() {
            Some(self.witness())
        } else {
            None
        }
    }

    fn present(&self, id: usize) -> bool {
        self.p.is_basic(id) || self.in_set[id]
    }

    fn new_parts(&self, sp: &Split) -> usize {
        match (!self.present(sp.left), !self.present(sp.right)) {
            (true, true) if sp.left == sp.right => 1,
            (l, r) => l as usize + r as usize,
        }
    }

    /// Splits of `x` that may be chosen now: those needing at most `slack`
    /// new parts, up to and including the first split already fully present.
    /// A later split would describe the same set as that one.
    fn allowed(&self, x: usize, slack: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let splits = &self.p.splits[x];
        let last = splits.iter().position(|sp| self.new_parts(sp) == 0).unwrap_or(splits.len() - 1);
        splits[..=last].iter().enumerate().filter_map(move |(i, sp)| {
            let fresh = self.new_parts(sp);
            (fresh <= slack).then_some((i, fresh))
        })
    }

    /// New members needed to build `x`, at least: `x` parses into single
    /// symbols, copies of its own earlier text and other members, and every
    /// factor past the first two costs one join.
    fn parse_shortfall(&self, x: usize, scratch: &mut Vec<usize>) -> usize {
        let l = self.p.len[x];
        scratch.clear();
        scratch.push(0);
        let mut windows = self.p.windows[x].iter().peekable();
        for end in 1..=l {
            let mut best = scratch[end - 1] + 1;
            while let Some(w) = windows.next_if(|w| w.end == end) {
                if w.copy || self.in_set[w.part] {
                    best = best.min(scratch[w.begin] + 1);
                }
            }
            scratch.push(best);
        }
        scratch[l].saturating_sub(2)
    }

    /// True when adding `part` completed a split that precedes the one
    /// chosen for its owner.
    fn breaks_first_split_rule(&self, part: usize) -> bool {
        self.p.uses[part].iter().any(|&(owner, j)| {
            self.in_set[owner]
                && self.chosen[owner].is_some_and(|c| j < c)
                && self.new_parts(&self.p.splits[owner][j]) == 0
        })
    }

    fn dfs(&mut self) -> bool {
        if self.unresolved.is_empty() {
            return true;
        }
        let slack = self.budget - self.size;

        // Most constrained member first, collecting the uncovered seams the
        // unresolved members could still cover.
        self.stamp += 1;
        let mut coverable = 0;
        let mut mark = std::mem::take(&mut self.seam_mark);
        let mut pick: Option<(usize, usize)> = None;
        for (k, &x) in self.unresolved.iter().enumerate() {
            let mut feasible = 0;
            for (i, _) in self.allowed(x, slack) {
                feasible += 1;
                let seam = self.p.splits[x][i].seam;
                if self.cover[seam] == 0 && mark[seam] != self.stamp {
                    mark[seam] = self.stamp;
                    coverable += 1;
                }
            }
            if pick.map_or(true, |(_, best)| feasible < best) {
                pick = Some((k, feasible));
            }
            if feasible == 0 {
                break;
            }
        }
        self.seam_mark = mark;
        let (k, feasible) = pick.expect("unresolved is non-empty");
        if feasible == 0 {
            return false;
        }
        // Each unresolved member covers one seam; the rest need new members.
        let shortfall = self.uncovered - coverable.min(self.unresolved.len()).min(self.uncovered);
        if shortfall > slack {
            return false;
        }
        let mut scratch = std::mem::take(&mut self.scratch);
        let parse = self.unresolved.iter().map(|&u| self.parse_shortfall(u, &mut scratch)).max().unwrap_or(0);
        self.scratch = scratch;
        if parse > slack {
            return false;
        }
        let x = self.unresolved.remove(k);

        let mut options: Vec<(usize, usize, usize)> = self
            .allowed(x, slack)
            .map(|(i, fresh)| {
                let sp = &self.p.splits[x][i];
                (fresh, self.p.len[sp.left].abs_diff(self.p.len[sp.right]), i)
            })
            .collect();
        options.sort_unstable();

        for (_, _, i) in options {
            let sp = self.p.splits[x][i];
            self.chosen[x] = Some(i);
            let mut added = [usize::MAX; 2];
            for (slot, part) in [sp.left, sp.right].into_iter().enumerate() {
                if !self.present(part) {
                    self.in_set[part] = true;
                    self.size += 1;
                    self.unresolved.push(part);
                    added[slot] = part;
                }
            }
            self.cover[sp.seam] += 1;
            if self.cover[sp.seam] == 1 {
                self.uncovered -= 1;
            }

            let consistent = added.iter().all(|&p| p == usize::MAX || !self.breaks_first_split_rule(p));
            if consistent && self.dfs() {
                return true;
            }

            self.cover[sp.seam] -= 1;
            if self.cover[sp.seam] == 0 {
                self.uncovered += 1;
            }
            for part in added.into_iter().rev().filter(|&p| p != usize::MAX) {
                self.in_set[part] = false;
                self.size -= 1;
                let popped = self.unresolved.pop();
                debug_assert_eq!(popped, Some(part));
            }
            self.chosen[x] = None;
        }
        self.unresolved.insert(k, x);
        false
    }

    fn witness(&self) -> AssemblyPath {
        // Ids are ordered by length, so parts always precede their products.
        let members: Vec<usize> = (0..self.in_set.len()).filter(|&id| self.in_set[id]).collect();
        let mut step_of = vec![usize::MAX; self.in_set.len()];
        let mut path = AssemblyPath::new();
        for &id in &members {
            let sp = self.p.splits[id][self.chosen[id].expect("every member is resolved")];
            let as_ref = |part: usize| {
                if self.p.is_basic(part) {
                    ObjectRef::Basic(self.p.text(part)[0])
                } else {
                    ObjectRef::Step(step_of[part])
                }
            };
            let (l, r) = (as_ref(sp.left), as_ref(sp.right));
            step_of[id] = path.push(l, r).expect("parts are shorter than the product");
        }
        path
    }
}
