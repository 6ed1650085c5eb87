//! Slow reference implementations written straight from the definitions.
//!
//! Sets are plain member lists. Nothing here shares code with the main
//! crate, so agreement between the two is evidence rather than tautology.

use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;

/// Every `tau` in `0..edo` with each member of `combo` inside `set + tau`.
pub fn naive_candidate_transpositions(set: &[u32], combo: &[u32], edo: u32) -> Vec<u32> {
    (0..edo)
        .filter(|&tau| {
            let shifted: Vec<u32> = set.iter().map(|&s| (s + tau) % edo).collect();
            combo.iter().all(|x| shifted.contains(&(x % edo)))
        })
        .collect()
}

pub fn naive_bits(set: &[u32], combo: &[u32], edo: u32) -> Option<f64> {
    let t = naive_candidate_transpositions(set, combo, edo).len();
    (t > 0).then(|| (edo as f64 / t as f64).log2())
}

/// All k-element sublists, by recursion.
pub fn k_subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with_first: Vec<Vec<u32>> = k_subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut rest| {
            rest.insert(0, items[0]);
            rest
        })
        .collect();
    with_first.extend(k_subsets(&items[1..], k));
    with_first
}

/// Mean self-information over the k-subsets of `set`.
pub fn naive_expected_bits(set: &[u32], k: usize, edo: u32) -> f64 {
    let subsets = k_subsets(set, k);
    let total: f64 = subsets
        .iter()
        .map(|x| naive_bits(set, x, edo).expect("subsets always occur"))
        .sum();
    total / subsets.len() as f64
}

/// Mean self-information over every nonempty subset of `set`, each weighted equally.
pub fn naive_set_expected_bits(set: &[u32], edo: u32) -> f64 {
    let m = set.len();
    let mut total = 0.0;
    let mut count = 0u64;
    for mask in 1u64..(1u64 << m) {
        let combo: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
        total += naive_bits(set, &combo, edo).expect("subsets always occur");
        count += 1;
    }
    total / count as f64
}

/// Expected self-information after `n` uniform draws, by enumerating all `m^n` sequences.
pub fn naive_expected_bits_after_draws(set: &[u32], n: u32, edo: u32) -> f64 {
    let m = set.len() as u64;
    let sequences = m.pow(n);
    let mut total = 0.0;
    for code in 0..sequences {
        let mut rest = code;
        let mut seen: Vec<u32> = Vec::new();
        for _ in 0..n {
            let pc = set[(rest % m) as usize];
            rest /= m;
            if !seen.contains(&pc) {
                seen.push(pc);
            }
        }
        total += naive_bits(set, &seen, edo).expect("drawn notes always occur");
    }
    total / sequences as f64
}

pub const MAX_PARTITION_ELEMENTS: usize = 12;

/// Number of partitions of an n-set into exactly k blocks, counted by walking
/// restricted growth strings. Refuses `n > 12`.
pub fn partitions_count(n: usize, k: usize) -> Result<u64, String> {
    if n > MAX_PARTITION_ELEMENTS {
        return Err(format!("n = {n} exceeds the enumeration limit {MAX_PARTITION_ELEMENTS}"));
    }
    if n == 0 {
        return Ok(u64::from(k == 0));
    }
    fn walk(pos: usize, n: usize, blocks: usize, k: usize) -> u64 {
        if blocks > k || blocks + (n - pos) < k {
            return 0;
        }
        if pos == n {
            return u64::from(blocks == k);
        }
        // Element `pos` joins an existing block or opens the next one.
        (0..=blocks)
            .map(|b| walk(pos + 1, n, blocks.max(b + 1), k))
            .sum()
    }
    Ok(walk(1, n, 1, k))
}

#[derive(Clone, Debug)]
pub struct SimulationConfig {
    pub trials: u64,
    pub seed: u64,
    pub draws: usize,
    pub set: Vec<u32>,
}

/// Histogram of distinct-member counts over `trials` sequences of uniform
/// draws. Index k holds the number of trials that saw exactly k members.
pub fn monte_carlo_distinct_counts(config: &SimulationConfig) -> Vec<u64> {
    let m = config.set.len();
    let mut rng = XorShiftRng::seed_from_u64(config.seed);
    let mut histogram = vec![0u64; m + 1];
    let mut seen = vec![false; m];
    for _ in 0..config.trials {
        seen.iter_mut().for_each(|s| *s = false);
        let mut distinct = 0;
        for _ in 0..config.draws {
            let i = rng.random_range(0..m);
            if !seen[i] {
                seen[i] = true;
                distinct += 1;
            }
        }
        histogram[distinct] += 1;
    }
    histogram
}
