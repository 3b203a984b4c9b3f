//! Brute-force assembly index used to cross-check the optimized search.
//!
//! Breadth-first over build states, deepening the step budget one at a time.
//! A state is the set of objects built so far plus the subset not yet used as
//! an operand. A step joins any two available objects (basic symbols or built
//! ones) whose concatenation occurs in the target.
//!
//! In a shortest pathway every product except the last is consumed by a later
//! step, and a step consumes at most two unused objects while creating one.
//! So a state with `u` unused objects and `r` steps left is dead once
//! `u > r + 1`. The longest object also at most doubles per step.

use std::collections::{HashMap, HashSet};

use super::AssemblyError;
use crate::string::{AssemblyString, Symbol};

/// Longest string the oracle accepts.
pub const ORACLE_MAX_LEN: usize = 16;

type Members = [u64; 3];

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    built: Members,
    unused: Members,
}

pub fn oracle_assembly_index(s: &AssemblyString) -> Result<usize, AssemblyError> {
    let target = s.symbols();
    let n = target.len();
    if n > ORACLE_MAX_LEN {
        return Err(AssemblyError::OracleBudget { len: n, max: ORACLE_MAX_LEN });
    }
    if n == 1 {
        return Ok(0);
    }
    let space = Space::new(target);
    let mut budget = 1;
    while (1usize << budget) < n {
        budget += 1;
    }
    loop {
        if space.reachable_within(budget) {
            return Ok(budget);
        }
        budget += 1;
    }
}

/// Every distinct substring of the target; ids below `basic_count` are the
/// single symbols.
struct Space {
    len: Vec<usize>,
    basic_count: usize,
    /// `joins[a][b]` is the id of `a + b` when that occurs in the target.
    joins: Vec<Vec<Option<usize>>>,
    /// Adjacent pairs of the target contained in each substring, as a bitmask.
    pairs: Vec<u64>,
    all_pairs: u64,
    goal: usize,
    n: usize,
}

impl Space {
    fn new(target: &[Symbol]) -> Self {
        let n = target.len();
        let mut pieces: Vec<Vec<Symbol>> = Vec::new();
        let mut lookup: HashMap<Vec<Symbol>, usize> = HashMap::new();
        for width in 1..=n {
            for i in 0..=n - width {
                let piece = target[i..i + width].to_vec();
                if !lookup.contains_key(&piece) {
                    lookup.insert(piece.clone(), pieces.len());
                    pieces.push(piece);
                }
            }
        }
        let basic_count = pieces.iter().filter(|p| p.len() == 1).count();
        let mut pair_index: HashMap<(Symbol, Symbol), usize> = HashMap::new();
        for w in target.windows(2) {
            let next = pair_index.len();
            pair_index.entry((w[0], w[1])).or_insert(next);
        }
        let pairs = pieces
            .iter()
            .map(|p| p.windows(2).fold(0u64, |m, w| m | 1 << pair_index[&(w[0], w[1])]))
            .collect();
        let joins = pieces
            .iter()
            .map(|a| {
                pieces
                    .iter()
                    .map(|b| {
                        let mut joined = a.clone();
                        joined.extend_from_slice(b);
                        lookup.get(&joined).copied()
                    })
                    .collect()
            })
            .collect();
        Self {
            len: pieces.iter().map(Vec::len).collect(),
            basic_count,
            joins,
            pairs,
            all_pairs: (1u64 << pair_index.len()) - 1,
            goal: lookup[target],
            n,
        }
    }

    fn reachable_within(&self, budget: usize) -> bool {
        let start = State { built: [0; 3], unused: [0; 3] };
        let mut level: HashSet<State> = HashSet::from([start]);
        for depth in 1..=budget {
            let left = budget - depth;
            let mut next = HashSet::new();
            for state in &level {
                let pool: Vec<usize> = (0..self.len.len())
                    .filter(|&i| i < self.basic_count || has(&state.built, i))
                    .collect();
                for &a in &pool {
                    for &b in &pool {
                        let Some(id) = self.joins[a][b] else { continue };
                        if id == self.goal {
                            return true;
                        }
                        if left == 0 || has(&state.built, id) {
                            continue;
                        }
                        let mut grown = *state;
                        set(&mut grown.built, id);
                        set(&mut grown.unused, id);
                        for used in [a, b] {
                            if used >= self.basic_count {
                                clear(&mut grown.unused, used);
                            }
                        }
                        if self.viable(&grown, left) {
                            next.insert(grown);
                        }
                    }
                }
            }
            level = next;
        }
        false
    }

    /// Whether `state` could still reach the target in `left` more steps.
    fn viable(&self, state: &State, left: usize) -> bool {
        let unused: u32 = state.unused.iter().map(|w| w.count_ones()).sum();
        if unused as usize > left + 1 {
            return false;
        }
        let built = (self.basic_count..self.len.len()).filter(|&i| has(&state.built, i));
        let (longest, covered) = built.fold((1, 0u64), |(l, c), i| (l.max(self.len[i]), c | self.pairs[i]));
        if (longest << left) < self.n {
            return false;
        }
        // A join adds at most one adjacent pair to those contained in the pool.
        (self.all_pairs & !covered).count_ones() as usize <= left
    }
}

fn has(members: &Members, id: usize) -> bool {
    members[id / 64] >> (id % 64) & 1 == 1
}

fn set(members: &mut Members, id: usize) {
    members[id / 64] |= 1 << (id % 64);
}

fn clear(members: &mut Members, id: usize) {
    members[id / 64] &= !(1 << (id % 64));
}
