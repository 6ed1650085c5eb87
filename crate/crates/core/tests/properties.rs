use std::collections::HashSet;

use proptest::prelude::*;
use tonal_ambiguity::family::{self, ScaleEntry, ScaleFamily};
use tonal_ambiguity::measure::{self, TonicPrior};
use tonal_ambiguity::pcset::{self, PitchClassSet};
use tonal_ambiguity::temporal;
use tonal_oracle as oracle;

fn full(edo: u32) -> u64 {
    if edo == 64 {
        u64::MAX
    } else {
        (1u64 << edo) - 1
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Nonempty set in an EDO drawn from `edos`.
fn nonempty_set(edos: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = PitchClassSet> {
    edos.prop_flat_map(|edo| (Just(edo), 1..=full(edo)))
        .prop_map(|(edo, mask)| PitchClassSet::from_mask(edo, mask).unwrap())
}

/// A set with one of its nonempty subsets.
fn set_and_subset(edos: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (PitchClassSet, PitchClassSet)> {
    nonempty_set(edos).prop_flat_map(|s| {
        let mask = s.mask();
        any::<u64>().prop_map(move |bits| {
            let mut sub = bits & mask;
            if sub == 0 {
                sub = mask & mask.wrapping_neg();
            }
            (s, PitchClassSet::from_mask(s.edo(), sub).unwrap())
        })
    })
}

/// Sets small enough for exhaustive expectations.
fn modest_set() -> impl Strategy<Value = PitchClassSet> {
    (9u32..=16)
        .prop_flat_map(|edo| (Just(edo), proptest::sample::subsequence((0..edo).collect::<Vec<_>>(), 1..=9)))
        .prop_map(|(edo, members)| PitchClassSet::new(edo, members).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_ignores_transposition((edo, mask, delta) in (2u32..=24).prop_flat_map(|c| (Just(c), 1..=full(c), 0..c as i64))) {
        let x = PitchClassSet::from_mask(edo, mask).unwrap();
        prop_assert_eq!(pcset::normal_form(&x).unwrap(), pcset::normal_form(&x.transpose(delta)).unwrap());
    }

    #[test]
    fn interval_vector_ignores_transposition(s in nonempty_set(2..=24), delta in 0i64..64) {
        let v = pcset::interval_vector(&s);
        prop_assert_eq!(&v, &pcset::interval_vector(&s.transpose(delta)));
        let n = s.len() as u64;
        prop_assert_eq!(v.total(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn subsets_are_complete_and_distinct(s in modest_set(), k in 0usize..=9) {
        prop_assume!(k <= s.len());
        let subsets: Vec<_> = pcset::subsets_of_cardinality(&s, k).unwrap().collect();
        let distinct: HashSet<_> = subsets.iter().collect();
        prop_assert_eq!(subsets.len() as u64, binomial(s.len() as u64, k as u64));
        prop_assert_eq!(distinct.len(), subsets.len());
        prop_assert!(subsets.iter().all(|x| x.len() == k && x.is_subset_of(&s)));
    }

    #[test]
    fn symmetry_order_divides_edo(s in nonempty_set(1..=64)) {
        prop_assert_eq!(s.edo() % pcset::symmetry_order(&s).unwrap(), 0);
    }

    #[test]
    fn nested_combinations_shrink_t((s, y) in set_and_subset(5..=24), drop in any::<u64>()) {
        let mut x_mask = y.mask() & drop;
        if x_mask == 0 {
            x_mask = y.mask() & y.mask().wrapping_neg();
        }
        let x = PitchClassSet::from_mask(s.edo(), x_mask).unwrap();
        let tx = measure::tonal_ambiguity(&s, &x).unwrap();
        let ty = measure::tonal_ambiguity(&s, &y).unwrap();
        prop_assert!(ty <= tx);
        let bx = measure::self_information(&s, &x).unwrap().bits;
        let by = measure::self_information(&s, &y).unwrap().bits;
        prop_assert!(by >= bx - 1e-12);
    }

    #[test]
    fn t_ignores_transposition_of_the_combination((s, x) in set_and_subset(5..=24), delta in 0i64..64) {
        prop_assert_eq!(
            measure::tonal_ambiguity(&s, &x).unwrap(),
            measure::tonal_ambiguity(&s, &x.transpose(delta)).unwrap()
        );
        prop_assert_eq!(
            measure::tonal_ambiguity(&s, &x).unwrap(),
            measure::tonal_ambiguity(&s.transpose(delta), &x.transpose(delta)).unwrap()
        );
    }

    #[test]
    fn singleton_and_full_set_laws(s in nonempty_set(1..=64), pick in any::<u32>()) {
        let x = PitchClassSet::new(s.edo(), [pick % s.edo()]).unwrap();
        prop_assert_eq!(measure::tonal_ambiguity(&s, &x).unwrap() as usize, s.len());
        prop_assert_eq!(measure::tonal_ambiguity(&s, &s).unwrap(), pcset::symmetry_order(&s).unwrap());
    }

    #[test]
    fn expectation_grows_with_cardinality(s in modest_set()) {
        let profile = measure::cardinality_profile(&s).unwrap();
        for w in profile.rows.windows(2) {
            prop_assert!(w[1].expected_bits >= w[0].expected_bits - 1e-12);
        }
    }

    #[test]
    fn geometric_mean_below_arithmetic_mean(s in modest_set()) {
        let c = s.edo();
        for k in 1..=s.len() {
            let e = measure::expected_info_at_cardinality(&s, k).unwrap();
            let geometric = f64::from(c) / 2f64.powf(e.expected_bits);
            prop_assert!(geometric <= e.mean_tonics() + 1e-9);
        }
    }

    #[test]
    fn tai_between_symmetry_order_and_size(s in modest_set()) {
        let report = measure::tai(&s).unwrap();
        let sym = f64::from(pcset::symmetry_order(&s).unwrap());
        prop_assert!(sym <= report.tai + 1e-9);
        prop_assert!(report.tai <= s.len() as f64 + 1e-9);
        prop_assert!((report.nmi + report.na - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_prior_reduces_to_self_information((s, x) in set_and_subset(5..=24)) {
        let prior = TonicPrior::uniform(s.edo());
        let gain = measure::info_gain_with_prior(&s, &x, &prior).unwrap();
        let bits = measure::self_information(&s, &x).unwrap().bits;
        prop_assert!((gain - bits).abs() < 1e-9);
    }

    #[test]
    fn fast_path_matches_oracle(s in nonempty_set(5..=24), combo_mask in any::<u64>()) {
        let combo = PitchClassSet::from_mask(s.edo(), (combo_mask & full(s.edo())).max(1)).unwrap();
        let fast = measure::candidate_transpositions(&s, &combo).unwrap();
        let slow = oracle::naive_candidate_transpositions(&s.members(), &combo.members(), s.edo());
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn set_expectation_matches_oracle(s in modest_set()) {
        let fast = measure::set_expected_info(&s).unwrap();
        let slow = oracle::naive_set_expected_bits(&s.members(), s.edo());
        prop_assert!((fast - slow).abs() < 1e-9);
    }

    #[test]
    fn occupancy_sums_to_one(n in 1usize..=64, m in 1usize..=64) {
        let d = temporal::distinct_count_distribution(n, m).unwrap();
        let total: f64 = d.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(d.probabilities.iter().all(|&p| (0.0..=1.0 + 1e-12).contains(&p)));
    }

    #[test]
    fn curve_descends_to_symmetry_order(s in modest_set()) {
        let curve = temporal::convergence_curve(&s, 200).unwrap();
        for w in curve.points.windows(2) {
            prop_assert!(w[1].tonics <= w[0].tonics + 1e-9);
        }
        let last = curve.points.last().unwrap().tonics;
        prop_assert!((last - f64::from(curve.asymptote)).abs() < 1e-3 * s.len() as f64);
    }

    #[test]
    fn survivors_shrink_and_gain_is_bounded(members in proptest::collection::vec(1u64..(1 << 12), 1..6), combo in 1u64..(1 << 12), extra in 0u64..(1 << 12)) {
        let entries: Vec<ScaleEntry> = members
            .iter()
            .enumerate()
            .map(|(i, &m)| ScaleEntry {
                name: format!("s{i}"),
                label: format!("s{i}"),
                set: PitchClassSet::from_mask(12, m).unwrap(),
            })
            .collect();
        prop_assume!(ScaleFamily::new(entries.clone()).is_ok());
        let fam = ScaleFamily::new(entries).unwrap();
        let x = PitchClassSet::from_mask(12, combo).unwrap();
        let y = PitchClassSet::from_mask(12, combo | extra).unwrap();
        let names = |r: &family::SurvivorReport| r.survivors.iter().map(|s| s.name.clone()).collect::<HashSet<_>>();
        if let Ok(ry) = family::family_survivors(&fam, &y) {
            let rx = family::family_survivors(&fam, &x).unwrap();
            prop_assert!(names(&ry).is_subset(&names(&rx)));
        }
        if let Ok(rx) = family::family_survivors(&fam, &x) {
            prop_assert!(rx.gain_bits >= 0.0);
            prop_assert!(rx.gain_bits <= (fam.len() as f64).log2() + 1e-12);
            prop_assert_eq!(rx.gain_bits == 0.0, rx.survivors.len() == fam.len());
        }
    }
}

#[test]
fn census_covers_every_subset() {
    for edo in 1..=16u32 {
        for k in 1..=edo as usize {
            let covered: u64 = pcset::tn_class_census(edo, k)
                .unwrap()
                .iter()
                .map(|c| u64::from(pcset::orbit_size(c).unwrap()))
                .sum();
            assert_eq!(covered, binomial(u64::from(edo), k as u64), "c={edo} k={k}");
            if gcd(k as u32, edo) == 1 {
                assert!(pcset::tn_class_census(edo, k)
                    .unwrap()
                    .iter()
                    .all(|c| pcset::orbit_size(c).unwrap() == edo));
            }
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn stirling_matches_partition_enumeration() {
    for n in 0..=12 {
        for k in 0..=12 {
            assert_eq!(
                temporal::stirling2(n, k).unwrap(),
                u128::from(oracle::partitions_count(n, k).unwrap()),
                "S({n},{k})"
            );
        }
    }
}

#[test]
fn draw_expectation_matches_enumeration() {
    let major = pcset::parse_pcset("024579E", 12).unwrap();
    for n in 1..=6 {
        let fast = temporal::expected_info_after_draws(&major, n as usize).unwrap().bits;
        let slow = oracle::naive_expected_bits_after_draws(&major.members(), n, 12);
        assert!((fast - slow).abs() < 1e-9, "n={n}: {fast} vs {slow}");
    }
}

#[test]
fn per_cardinality_expectation_matches_oracle() {
    for spelling in ["024579E", "02479", "0235689E", "03478E", "013"] {
        let s = pcset::parse_pcset(spelling, 12).unwrap();
        for k in 1..=s.len() {
            let fast = measure::expected_info_at_cardinality(&s, k).unwrap().expected_bits;
            let slow = oracle::naive_expected_bits(&s.members(), k, 12);
            assert!((fast - slow).abs() < 1e-12, "{spelling} k={k}");
        }
    }
}
