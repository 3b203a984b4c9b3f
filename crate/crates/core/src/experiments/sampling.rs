use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ExperimentError;
use crate::compression::build_frequency_table;
use crate::string::{AssemblyString, Symbol};

/// Fixed seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_A55E_0B1E_C75;

/// Largest number of distinct arrangements [`enumerate_distinct_rearrangements`] will produce.
pub const MAX_ENUMERATION: u128 = 10_000_000;

/// Description of the random source, echoed into reports.
pub const GENERATOR: &str =
    "ChaCha8 (rand_chacha 0.3, seed_from_u64) driving an in-place Fisher-Yates shuffle (rand 0.8 SliceRandom::shuffle)";

/// `k` independent uniform shuffles of `base`, deterministic in `seed`.
/// Repeated arrangements are kept.
pub fn sample_rearrangements(base: &AssemblyString, k: usize, seed: u64) -> Vec<AssemblyString> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = base.symbols().to_vec();
    (0..k)
        .map(|_| {
            work.shuffle(&mut rng);
            AssemblyString::new(work.clone()).expect("same length as base")
        })
        .collect()
}

/// `len! / prod(count!)`, the number of distinct arrangements of `s`.
pub fn multiset_permutation_count(s: &AssemblyString) -> u128 {
    let table = build_frequency_table(s.symbols()).expect("non-empty");
    // Multiply binomials C(placed + c, c) to stay in integers.
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for (_, c) in table.iter() {
        for i in 1..=c as u128 {
            placed += 1;
            total = total * placed / i;
        }
    }
    total
}

/// Every distinct arrangement of `base`, in ascending lexicographic order.
pub fn enumerate_distinct_rearrangements(base: &AssemblyString) -> Result<Rearrangements, ExperimentError> {
    let count = multiset_permutation_count(base);
    if count > MAX_ENUMERATION {
        return Err(ExperimentError::TooManyArrangements { count, max: MAX_ENUMERATION });
    }
    let mut first = base.symbols().to_vec();
    first.sort_unstable();
    Ok(Rearrangements { next: Some(first), remaining: count })
}

pub struct Rearrangements {
    next: Option<Vec<Symbol>>,
    remaining: u128,
}

impl Iterator for Rearrangements {
    type Item = AssemblyString;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if next_permutation(&mut following) {
            self.next = Some(following);
        }
        self.remaining -= 1;
        Some(AssemblyString::new(current).expect("non-empty"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

impl ExactSizeIterator for Rearrangements {}

fn next_permutation(v: &mut [Symbol]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("v[i + 1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> AssemblyString {
        AssemblyString::from_text(text).unwrap()
    }

    #[test]
    fn sampling_is_seeded() {
        let base = s("zbzbczbzbczbzbc");
        assert_eq!(sample_rearrangements(&base, 50, 3), sample_rearrangements(&base, 50, 3));
        assert_ne!(sample_rearrangements(&base, 50, 3), sample_rearrangements(&base, 50, 4));
    }

    #[test]
    fn samples_are_permutations() {
        let base = s("zbzbczbzbczbzbc");
        let want = build_frequency_table(base.symbols()).unwrap();
        for r in sample_rearrangements(&base, 100, DEFAULT_SEED) {
            assert_eq!(build_frequency_table(r.symbols()).unwrap(), want);
        }
        for r in sample_rearrangements(&s("zb"), 4, 11) {
            assert!(r == s("zb") || r == s("bz"));
        }
    }

    #[test]
    fn enumeration_small() {
        let all: Vec<String> = enumerate_distinct_rearrangements(&s("zb")).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(all, vec!["bz", "zb"]);
        let all: Vec<String> = enumerate_distinct_rearrangements(&s("zzb")).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(all, vec!["bzz", "zbz", "zzb"]);
    }

    #[test]
    fn counts() {
        // 15! / (6! 6! 3!) = 1307674368000 / (720 * 720 * 6)
        assert_eq!(1_307_674_368_000u128 / (720 * 720 * 6), 420_420);
        assert_eq!(multiset_permutation_count(&s("zbzbczbzbczbzbc")), 420_420);
        assert_eq!(multiset_permutation_count(&s("zzb")), 3);
        assert_eq!(multiset_permutation_count(&s("z")), 1);
    }

    #[test]
    fn guard_reports_count() {
        let big = s("abcdefghijkl");
        match enumerate_distinct_rearrangements(&big) {
            Err(ExperimentError::TooManyArrangements { count, .. }) => assert_eq!(count, 479_001_600),
            Err(other) => panic!("unexpected error {other}"),
            Ok(_) => panic!("guard should trip"),
        }
    }
}
