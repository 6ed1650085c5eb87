//! Melodies as uniform draws with repetition from a set.
//!
//! `n` draws from an `m`-note set contain exactly `k` distinct pitches with
//! probability `P_k = S(n, k) * m! / (m - k)! / m^n`, where `S(n, k)` is a
//! Stirling number of the second kind. Weighting the per-cardinality
//! expectations by `P_k` gives the expected information of an `n`-note passage.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{self, AmbiguityValue, CardinalityProfile};
use crate::pcset::{self, PitchClassSet};

/// Passage length used when none is given: long enough to reach every note of an
/// octatonic set, short enough that diatonic sets have not fully converged.
pub const DEFAULT_DRAWS: usize = 8;

/// Integration range used for AUC summaries unless overridden.
pub const DEFAULT_AUC_RANGE: (usize, usize) = (1, 32);

pub fn default_draw_length() -> usize {
    DEFAULT_DRAWS
}

/// Stirling number of the second kind in `u128`; overflow is an error.
///
/// Only the band of the recurrence that feeds `S(n, k)` is evaluated, and every
/// entry in it is bounded by `S(n, k)`, so an overflow always means the result
/// itself does not fit.
pub fn stirling2(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    if k == 0 {
        return Ok(u128::from(n == 0));
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        let lo = k.saturating_sub(n - i).max(1);
        for j in (lo..=i.min(k)).rev() {
            row[j] = (j as u128)
                .checked_mul(row[j])
                .and_then(|v| v.checked_add(row[j - 1]))
                .ok_or_else(|| Error::Overflow(format!("S({n}, {k})")))?;
        }
        row[0] = 0;
    }
    Ok(row[k])
}

/// Row `S(n, 0..=k_max)` in arbitrary precision.
pub fn stirling2_row(n: usize, k_max: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); k_max + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=i.min(k_max)).rev() {
            let prev = row[j - 1].clone();
            row[j] *= j as u32;
            row[j] += prev;
        }
        row[0] = BigUint::zero();
    }
    row
}

pub fn stirling2_exact(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling2_row(n, k).swap_remove(k)
}

/// Correctly scaled `num / den` for integers of any size, including ones
/// beyond the `f64` range.
fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = (den.bits() + 64).saturating_sub(num.bits());
    let quotient = (num << shift) / den;
    let mut value = quotient.to_f64().unwrap_or(f64::INFINITY);
    let mut remaining = shift;
    while remaining > 0 {
        let step = remaining.min(512);
        value *= (-(step as f64)).exp2();
        remaining -= step;
    }
    value
}

/// Distribution of the number of distinct pitches in `n` draws from `m` notes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrawDistribution {
    pub n: usize,
    pub m: usize,
    /// `probabilities[k - 1]` is `P_k`.
    pub probabilities: Vec<f64>,
}

impl DrawDistribution {
    pub fn p(&self, k: usize) -> f64 {
        k.checked_sub(1)
            .and_then(|i| self.probabilities.get(i).copied())
            .unwrap_or(0.0)
    }
}

pub fn distinct_count_distribution(n: usize, m: usize) -> Result<DrawDistribution> {
    if n == 0 {
        return Err(Error::NoDraws);
    }
    if m == 0 {
        return Err(Error::EmptySet);
    }
    let stirling = stirling2_row(n, m);
    let den = BigUint::from(m).pow(n as u32);
    Ok(DrawDistribution {
        n,
        m,
        probabilities: occupancy(&stirling, &falling_factorials(m), &den),
    })
}

/// `m! / (m - k)!` for `k` in `0..=m`.
fn falling_factorials(m: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(m + 1);
    let mut value = BigUint::one();
    out.push(value.clone());
    for k in 1..=m {
        value *= (m - k + 1) as u64;
        out.push(value.clone());
    }
    out
}

fn occupancy(stirling: &[BigUint], falling: &[BigUint], den: &BigUint) -> Vec<f64> {
    (1..falling.len())
        .map(|k| ratio_to_f64(&(&stirling[k] * &falling[k]), den))
        .collect()
}

/// Distributions for `n = 1, 2, ...` draws from an `m`-note set, advancing the
/// Stirling row one draw at a time.
pub struct DrawDistributions {
    m: usize,
    n: usize,
    row: Vec<BigUint>,
    falling: Vec<BigUint>,
    den: BigUint,
}

pub fn draw_distributions(m: usize) -> Result<DrawDistributions> {
    if m == 0 {
        return Err(Error::EmptySet);
    }
    let mut row = vec![BigUint::zero(); m + 1];
    row[0] = BigUint::one();
    Ok(DrawDistributions {
        m,
        n: 0,
        row,
        falling: falling_factorials(m),
        den: BigUint::one(),
    })
}

impl Iterator for DrawDistributions {
    type Item = DrawDistribution;

    fn next(&mut self) -> Option<DrawDistribution> {
        self.n += 1;
        for j in (1..=self.n.min(self.m)).rev() {
            let prev = self.row[j - 1].clone();
            self.row[j] *= j as u32;
            self.row[j] += prev;
        }
        self.row[0] = BigUint::zero();
        self.den *= self.m as u64;
        Some(DrawDistribution {
            n: self.n,
            m: self.m,
            probabilities: occupancy(&self.row, &self.falling, &self.den),
        })
    }
}

fn weighted_bits(profile: &CardinalityProfile, dist: &DrawDistribution) -> AmbiguityValue {
    let bits = dist
        .probabilities
        .iter()
        .zip(&profile.rows)
        .map(|(p, row)| p * row.expected_bits)
        .sum();
    AmbiguityValue::from_bits(profile.edo(), bits)
}

/// Expected information of an `n`-note passage given a precomputed profile.
pub fn expected_info_for_profile(profile: &CardinalityProfile, n: usize) -> Result<AmbiguityValue> {
    let dist = distinct_count_distribution(n, profile.rows.len())?;
    Ok(weighted_bits(profile, &dist))
}

/// `E_S[I | n]`; its tonic count is the time-aware index for passages of `n` notes.
pub fn expected_info_after_draws(set: &PitchClassSet, n: usize) -> Result<AmbiguityValue> {
    expected_info_for_profile(&measure::cardinality_profile(set)?, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub n: usize,
    pub bits: f64,
    pub tonics: f64,
}

/// Expected tonic count as a function of passage length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceCurve {
    pub set: PitchClassSet,
    /// Symmetry order of the set: the limit of the curve.
    pub asymptote: u32,
    pub points: Vec<CurvePoint>,
}

pub fn curve_from_profile(profile: &CardinalityProfile, n_max: usize) -> Result<ConvergenceCurve> {
    if n_max == 0 {
        return Err(Error::NoDraws);
    }
    let points = draw_distributions(profile.rows.len())?
        .take(n_max)
        .map(|dist| {
            let v = weighted_bits(profile, &dist);
            CurvePoint {
                n: dist.n,
                bits: v.bits,
                tonics: v.tonic_count,
            }
        })
        .collect();
    Ok(ConvergenceCurve {
        set: profile.set,
        asymptote: pcset::symmetry_order(&profile.set)?,
        points,
    })
}

pub fn convergence_curve(set: &PitchClassSet, n_max: usize) -> Result<ConvergenceCurve> {
    curve_from_profile(&measure::cardinality_profile(set)?, n_max)
}

/// Reference level subtracted from the curve before integrating.
pub trait AucBaseline: Send + Sync {
    fn name(&self) -> &'static str;
    fn level(&self, curve: &ConvergenceCurve) -> f64;
}

struct Asymptote;
struct Unity;
struct ZeroLevel;

impl AucBaseline for Asymptote {
    fn name(&self) -> &'static str {
        "asymptote"
    }
    fn level(&self, curve: &ConvergenceCurve) -> f64 {
        f64::from(curve.asymptote)
    }
}

impl AucBaseline for Unity {
    fn name(&self) -> &'static str {
        "unity"
    }
    fn level(&self, _: &ConvergenceCurve) -> f64 {
        1.0
    }
}

impl AucBaseline for ZeroLevel {
    fn name(&self) -> &'static str {
        "zero"
    }
    fn level(&self, _: &ConvergenceCurve) -> f64 {
        0.0
    }
}

static BASELINES: [&dyn AucBaseline; 3] = [&Asymptote, &Unity, &ZeroLevel];

/// Registered baselines; the first is the default.
pub fn auc_baselines() -> &'static [&'static dyn AucBaseline] {
    &BASELINES
}

pub fn auc_baseline(name: &str) -> Result<&'static dyn AucBaseline> {
    BASELINES
        .iter()
        .copied()
        .find(|b| b.name() == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "AUC baseline",
            name: name.to_string(),
            choices: BASELINES.iter().map(|b| b.name()).collect::<Vec<_>>().join(", "),
        })
}

/// Trapezoidal area between the curve and the baseline over `n` in `[start, end]`.
pub fn auc(curve: &ConvergenceCurve, baseline: &dyn AucBaseline, range: (usize, usize)) -> Result<f64> {
    let (start, end) = range;
    let len = curve.points.len();
    if start == 0 || start > end || end > len {
        return Err(Error::RangeOutsideCurve { start, end, len });
    }
    let level = baseline.level(curve);
    Ok(curve.points[start - 1..end]
        .windows(2)
        .map(|w| (w[0].tonics + w[1].tonics) / 2.0 - level)
        .sum())
}
