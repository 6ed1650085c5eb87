//! Candidate transpositions, self-information and the set-level ambiguity index.
//!
//! For a context set `S` in Z_c and an observed combination `X`, the candidate
//! transpositions are the `tau` with `X ⊆ tau + S`. Their count `t` gives the
//! self-information `log2(c / t)` bits. Averaging over all `k`-subsets of `S`
//! gives the per-cardinality expectation, and weighting cardinalities by
//! `C(m, k) / (2^m - 1)` gives the set-level expectation whose tonic-count
//! reading `c / 2^E` is the tonal ambiguity index (TAI).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcset::{self, rotate, Combination, PitchClassSet, TnClass};

/// An amount of information together with its equivalent number of candidate tonics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmbiguityValue {
    pub bits: f64,
    pub tonic_count: f64,
}

impl AmbiguityValue {
    pub fn from_tonic_count(edo: u32, tonic_count: f64) -> Self {
        Self {
            bits: (f64::from(edo) / tonic_count).log2(),
            tonic_count,
        }
    }

    pub fn from_bits(edo: u32, bits: f64) -> Self {
        Self {
            bits,
            tonic_count: tonics_from_bits(edo, bits),
        }
    }
}

/// `c / 2^bits`.
pub fn tonics_from_bits(edo: u32, bits: f64) -> f64 {
    f64::from(edo) / bits.exp2()
}

/// An unreduced count ratio such as `2/35`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Probability {
    pub count: u64,
    pub total: u64,
}

impl Probability {
    pub fn value(&self) -> f64 {
        self.count as f64 / self.total as f64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

fn mask_of_candidates(set: &PitchClassSet, combo: &Combination) -> u64 {
    let c = set.edo();
    let x = combo.mask();
    let mut out = 0u64;
    for tau in 0..c {
        if x & !rotate(set.mask(), tau, c) == 0 {
            out |= 1u64 << tau;
        }
    }
    out
}

fn check_context(set: &PitchClassSet, combo: &Combination) -> Result<()> {
    set.same_edo(combo)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// All `tau` in Z_c with `combo ⊆ tau + set`, ascending. `combo` need not be a subset of `set`.
pub fn candidate_transpositions(set: &PitchClassSet, combo: &Combination) -> Result<Vec<u32>> {
    check_context(set, combo)?;
    let mask = mask_of_candidates(set, combo);
    Ok(PitchClassSet::from_mask(set.edo(), mask)?.members())
}

/// `t_S(X)`: the number of candidate transpositions. Zero when `X` occurs in no transposition.
pub fn tonal_ambiguity(set: &PitchClassSet, combo: &Combination) -> Result<u32> {
    check_context(set, combo)?;
    Ok(mask_of_candidates(set, combo).count_ones())
}

/// Bits of tonal uncertainty removed by observing `combo` in the context of `set`.
pub fn self_information(set: &PitchClassSet, combo: &Combination) -> Result<AmbiguityValue> {
    match tonal_ambiguity(set, combo)? {
        0 => Err(Error::AbsentCombination),
        t => Ok(AmbiguityValue::from_tonic_count(set.edo(), f64::from(t))),
    }
}

/// One Tn-class of `k`-subsets of the context set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassBreakdown {
    pub class: TnClass,
    pub t: u32,
    pub bits: f64,
    pub probability: Probability,
}

/// Expected information over the `k`-subsets of a set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CardinalityExpectation {
    pub k: usize,
    pub combination_count: u64,
    pub expected_bits: f64,
    pub expected_tonics: f64,
    /// Tn-classes in lexicographic order of their normal forms.
    pub breakdown: Vec<ClassBreakdown>,
}

impl CardinalityExpectation {
    /// Arithmetic mean of `t` over the `k`-subsets (an upper bound for `expected_tonics`).
    pub fn mean_tonics(&self) -> f64 {
        let total: f64 = self
            .breakdown
            .iter()
            .map(|b| b.class.multiplicity as f64 * f64::from(b.t))
            .sum();
        total / self.combination_count as f64
    }
}

struct Tally {
    count: u64,
    bits_sum: f64,
    classes: BTreeMap<PitchClassSet, (u64, u32)>,
}

/// Enumerates `k`-subsets once. Bits are accumulated from a histogram over `t`
/// so the result does not depend on enumeration order.
fn tally(set: &PitchClassSet, k: usize, with_classes: bool) -> Result<Tally> {
    let c = set.edo();
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut classes = BTreeMap::new();
    let mut count = 0u64;
    for combo in pcset::subsets_of_cardinality(set, k)? {
        let t = mask_of_candidates(set, &combo).count_ones();
        debug_assert!(t >= 1, "a subset of S always occurs at tau = 0");
        *histogram.entry(t).or_default() += 1;
        count += 1;
        if with_classes {
            let nf = pcset::normal_form(&combo)?;
            classes.entry(nf).or_insert((0, t)).0 += 1;
        }
    }
    let bits_sum = histogram
        .iter()
        .map(|(&t, &n)| n as f64 * (f64::from(c) / f64::from(t)).log2())
        .sum();
    Ok(Tally {
        count,
        bits_sum,
        classes,
    })
}

fn check_cardinality(set: &PitchClassSet, k: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 || k > set.len() {
        return Err(Error::CardinalityOutOfRange { k, max: set.len() });
    }
    Ok(())
}

pub fn expected_info_at_cardinality(set: &PitchClassSet, k: usize) -> Result<CardinalityExpectation> {
    check_cardinality(set, k)?;
    let c = set.edo();
    let tally = tally(set, k, true)?;
    let expected_bits = tally.bits_sum / tally.count as f64;
    let breakdown = tally
        .classes
        .into_iter()
        .map(|(representative, (multiplicity, t))| ClassBreakdown {
            class: TnClass {
                representative,
                multiplicity,
            },
            t,
            bits: (f64::from(c) / f64::from(t)).log2(),
            probability: Probability {
                count: multiplicity,
                total: tally.count,
            },
        })
        .collect();
    Ok(CardinalityExpectation {
        k,
        combination_count: tally.count,
        expected_bits,
        expected_tonics: tonics_from_bits(c, expected_bits),
        breakdown,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub k: usize,
    pub combination_count: u64,
    pub expected_bits: f64,
    pub expected_tonics: f64,
}

/// Per-cardinality expectations for `k = 1..=m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CardinalityProfile {
    pub set: PitchClassSet,
    pub rows: Vec<ProfileRow>,
}

impl CardinalityProfile {
    pub fn edo(&self) -> u32 {
        self.set.edo()
    }

    /// `E_{Ω_k}[I]` for `k` in `1..=m`.
    pub fn bits(&self, k: usize) -> Option<f64> {
        k.checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .map(|r| r.expected_bits)
    }

    /// Binomially weighted mean over all non-empty cardinalities.
    pub fn set_expected_bits(&self) -> f64 {
        let m = self.rows.len() as i32;
        let subsets = 2f64.powi(m) - 1.0;
        self.rows
            .iter()
            .map(|r| r.combination_count as f64 / subsets * r.expected_bits)
            .sum()
    }
}

pub fn cardinality_profile(set: &PitchClassSet) -> Result<CardinalityProfile> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let c = set.edo();
    let rows = (1..=set.len())
        .map(|k| {
            let tally = tally(set, k, false)?;
            let expected_bits = tally.bits_sum / tally.count as f64;
            Ok(ProfileRow {
                k,
                combination_count: tally.count,
                expected_bits,
                expected_tonics: tonics_from_bits(c, expected_bits),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CardinalityProfile { set: *set, rows })
}

/// `E_S[I]`, the expected information over all non-empty subsets.
pub fn set_expected_info(set: &PitchClassSet) -> Result<f64> {
    Ok(cardinality_profile(set)?.set_expected_bits())
}

/// Set-level summary: the TAI and its EDO-normalised forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetReport {
    pub set: PitchClassSet,
    pub profile: CardinalityProfile,
    pub expected_bits: f64,
    pub tai: f64,
    /// `E_S[I] / log2 c`; defined as 0 when c = 1.
    pub nmi: f64,
    pub na: f64,
}

impl SetReport {
    pub fn from_profile(profile: CardinalityProfile) -> Self {
        let c = profile.edo();
        let expected_bits = profile.set_expected_bits();
        let nmi = if c > 1 {
            expected_bits / f64::from(c).log2()
        } else {
            0.0
        };
        Self {
            set: profile.set,
            expected_bits,
            tai: tonics_from_bits(c, expected_bits),
            nmi,
            na: 1.0 - nmi,
            profile,
        }
    }
}

/// The tonal ambiguity index `c / 2^{E_S[I]}` with its full profile.
pub fn tai(set: &PitchClassSet) -> Result<SetReport> {
    Ok(SetReport::from_profile(cardinality_profile(set)?))
}

/// Tn-classes of `k`-subsets that pin the transposition on their own (`t = 1`).
pub fn diagnostic_combinations(set: &PitchClassSet, k: usize) -> Result<Vec<TnClass>> {
    Ok(expected_info_at_cardinality(set, k)?
        .breakdown
        .into_iter()
        .filter(|b| b.t == 1)
        .map(|b| b.class)
        .collect())
}

/// A probability distribution over tonics `0..c`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TonicPrior {
    probabilities: Vec<f64>,
}

const PRIOR_TOLERANCE: f64 = 1e-12;

impl TonicPrior {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidPrior("empty support".into()));
        }
        if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidPrior(format!("probability {p} is not a finite non-negative number")));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > PRIOR_TOLERANCE {
            return Err(Error::InvalidPrior(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self { probabilities })
    }

    pub fn uniform(edo: u32) -> Self {
        Self {
            probabilities: vec![1.0 / f64::from(edo); edo as usize],
        }
    }

    pub fn point_mass(edo: u32, tonic: u32) -> Result<Self> {
        let mut probabilities = vec![0.0; edo as usize];
        *probabilities
            .get_mut(tonic as usize)
            .ok_or(Error::PitchOutOfRange {
                value: i64::from(tonic),
                edo,
            })? = 1.0;
        Ok(Self { probabilities })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn entropy(&self) -> f64 {
        entropy(self.probabilities.iter().copied())
    }
}

fn entropy(ps: impl Iterator<Item = f64>) -> f64 {
    -ps.filter(|&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}

/// `H(T) - H(T | X)` where the posterior is the prior restricted to the
/// candidate transpositions and renormalised. Equals the self-information
/// under a uniform prior.
pub fn info_gain_with_prior(
    set: &PitchClassSet,
    combo: &Combination,
    prior: &TonicPrior,
) -> Result<f64> {
    let c = set.edo();
    if prior.probabilities.len() != c as usize {
        return Err(Error::EdoMismatch {
            left: c,
            right: prior.probabilities.len() as u32,
        });
    }
    let survivors = candidate_transpositions(set, combo)?;
    let mass: f64 = survivors
        .iter()
        .map(|&tau| prior.probabilities[tau as usize])
        .sum();
    if mass <= 0.0 {
        return Err(Error::InconsistentEvidence);
    }
    let posterior = survivors
        .iter()
        .map(|&tau| prior.probabilities[tau as usize] / mass);
    Ok(prior.entropy() - entropy(posterior))
}
