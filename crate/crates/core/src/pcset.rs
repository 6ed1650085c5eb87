//! Pitch-class sets over the cyclic group of an equal division of the octave.
//!
//! A set is stored as a characteristic bit vector in a single `u64`, so the
//! chromatic size is capped at [`MAX_EDO`] = 64. Transposition is a bit
//! rotation and containment is a mask test.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported chromatic size.
pub const MAX_EDO: u32 = 64;

/// Largest chromatic size for which the compact digit form (`0`-`9`, `T`, `E`) is accepted.
pub const MAX_COMPACT_EDO: u32 = 12;

/// A subset of Z_c together with its chromatic size c.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PitchClassSet {
    edo: u32,
    mask: u64,
}

/// An observed combination of pitch classes. Same representation as a set; may be empty.
pub type Combination = PitchClassSet;

fn check_edo(edo: u32) -> Result<()> {
    if edo == 0 || edo > MAX_EDO {
        Err(Error::EdoOutOfRange(edo))
    } else {
        Ok(())
    }
}

#[inline]
fn full_mask(edo: u32) -> u64 {
    if edo == 64 {
        u64::MAX
    } else {
        (1u64 << edo) - 1
    }
}

/// Rotates `mask` upwards by `tau` steps inside a ring of width `edo`. `tau < edo`.
#[inline]
pub(crate) fn rotate(mask: u64, tau: u32, edo: u32) -> u64 {
    if tau == 0 {
        mask
    } else {
        ((mask << tau) | (mask >> (edo - tau))) & full_mask(edo)
    }
}

impl PitchClassSet {
    /// Builds a set from members, rejecting values outside `[0, edo)` and duplicates.
    pub fn new(edo: u32, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_edo(edo)?;
        let mut mask = 0u64;
        for pc in members {
            if pc >= edo {
                return Err(Error::PitchOutOfRange {
                    value: i64::from(pc),
                    edo,
                });
            }
            let bit = 1u64 << pc;
            if mask & bit != 0 {
                return Err(Error::DuplicatePitch(pc));
            }
            mask |= bit;
        }
        Ok(Self { edo, mask })
    }

    pub fn empty(edo: u32) -> Result<Self> {
        check_edo(edo)?;
        Ok(Self { edo, mask: 0 })
    }

    /// The full chromatic aggregate Z_c.
    pub fn chromatic(edo: u32) -> Result<Self> {
        check_edo(edo)?;
        Ok(Self {
            edo,
            mask: full_mask(edo),
        })
    }

    pub fn from_mask(edo: u32, mask: u64) -> Result<Self> {
        check_edo(edo)?;
        if mask & !full_mask(edo) != 0 {
            let value = i64::from(63 - mask.leading_zeros());
            return Err(Error::PitchOutOfRange { value, edo });
        }
        Ok(Self { edo, mask })
    }

    pub fn edo(&self) -> u32 {
        self.edo
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, pc: u32) -> bool {
        pc < self.edo && self.mask & (1u64 << pc) != 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members {
        Members { mask: self.mask }
    }

    pub fn members(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Subset test; both sets must share a chromatic size.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.edo, other.edo);
        self.mask & !other.mask == 0
    }

    pub(crate) fn same_edo(&self, other: &Self) -> Result<()> {
        if self.edo == other.edo {
            Ok(())
        } else {
            Err(Error::EdoMismatch {
                left: self.edo,
                right: other.edo,
            })
        }
    }

    /// `{ (s + tau) mod c : s in self }`.
    pub fn transpose(&self, tau: i64) -> Self {
        let tau = tau.rem_euclid(i64::from(self.edo)) as u32;
        Self {
            edo: self.edo,
            mask: rotate(self.mask, tau, self.edo),
        }
    }
}

/// Ascending iterator over the members of a [`PitchClassSet`].
#[derive(Clone)]
pub struct Members {
    mask: u64,
}

impl Iterator for Members {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.mask == 0 {
            return None;
        }
        let pc = self.mask.trailing_zeros();
        self.mask &= self.mask - 1;
        Some(pc)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.mask.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for &PitchClassSet {
    type Item = u32;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Lexicographic on sorted members (after chromatic size).
impl Ord for PitchClassSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edo
            .cmp(&other.edo)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PitchClassSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn compact_digit(pc: u32) -> char {
    match pc {
        10 => 'T',
        11 => 'E',
        d => char::from_digit(d, 10).expect("pitch class below 10"),
    }
}

/// Compact digit form for c <= 12 (`024579E`), comma list otherwise (`0,3,13`).
/// The empty set prints as `{}`.
impl fmt::Display for PitchClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        if self.edo <= MAX_COMPACT_EDO {
            for pc in self {
                write!(f, "{}", compact_digit(pc))?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.iter().join(","))
        }
    }
}

impl fmt::Debug for PitchClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PitchClassSet({}; edo={})", self, self.edo)
    }
}

impl Serialize for PitchClassSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses either the compact digit form (`024579E`, only for c <= 12) or a
/// comma-separated integer list (`0, 3, 7`). Order-insensitive; duplicates,
/// out-of-range values and empty input are errors.
pub fn parse_pcset(text: &str, edo: u32) -> Result<PitchClassSet> {
    check_edo(edo)?;
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::parse(text, "empty input"));
    }
    let mut members = Vec::new();
    if trimmed.contains(',') || edo > MAX_COMPACT_EDO {
        for token in trimmed.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::parse(text, "empty list element"));
            }
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse(text, format!("{token:?} is not an integer")))?;
            if value < 0 || value >= i64::from(edo) {
                return Err(Error::PitchOutOfRange { value, edo });
            }
            members.push(value as u32);
        }
    } else {
        for ch in trimmed.chars() {
            let value = match ch {
                '0'..='9' => ch as u32 - '0' as u32,
                'T' | 't' => 10,
                'E' | 'e' => 11,
                _ => {
                    return Err(Error::parse(
                        text,
                        format!("character {ch:?} is outside the alphabet 0-9, T, E"),
                    ))
                }
            };
            if value >= edo {
                return Err(Error::PitchOutOfRange {
                    value: i64::from(value),
                    edo,
                });
            }
            members.push(value);
        }
    }
    PitchClassSet::new(edo, members)
}

pub fn transpose(set: &PitchClassSet, tau: i64) -> PitchClassSet {
    set.transpose(tau)
}

/// All `k`-subsets of `set`, lexicographic by sorted members.
pub fn subsets_of_cardinality(
    set: &PitchClassSet,
    k: usize,
) -> Result<impl Iterator<Item = Combination>> {
    if k > set.len() {
        return Err(Error::CardinalityOutOfRange { k, max: set.len() });
    }
    let edo = set.edo;
    Ok(set.members().into_iter().combinations(k).map(move |combo| {
        let mask = combo.iter().fold(0u64, |m, &pc| m | (1u64 << pc));
        PitchClassSet { edo, mask }
    }))
}

/// Counts of unordered pairs per interval class `1..=c/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalVector {
    counts: Vec<u32>,
}

impl IntervalVector {
    /// `counts()[i]` is the count for interval class `i + 1`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, interval_class: usize) -> Option<u32> {
        interval_class
            .checked_sub(1)
            .and_then(|i| self.counts.get(i).copied())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.counts.iter().join(","))
    }
}

pub fn interval_vector(set: &PitchClassSet) -> IntervalVector {
    let c = set.edo;
    let mut counts = vec![0u32; (c / 2) as usize];
    let members = set.members();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let d = b - a;
            let ic = d.min(c - d);
            counts[(ic - 1) as usize] += 1;
        }
    }
    IntervalVector { counts }
}

/// A transposition class: its normal-form representative and how many
/// subsets of a context set fall into it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TnClass {
    pub representative: PitchClassSet,
    pub multiplicity: u64,
}

/// Most compact rotation transposed to start at 0. Ties on span go to the
/// rotation with the smaller interval from the first element to the second,
/// then to the third, and so on. Transposition only; 037 and 047 stay distinct.
pub fn normal_form(combo: &Combination) -> Result<Combination> {
    if combo.is_empty() {
        return Err(Error::EmptySet);
    }
    let c = combo.edo;
    let xs = combo.members();
    let n = xs.len();
    let mut best: Option<Vec<u32>> = None;
    for start in 0..n {
        let origin = xs[start];
        let rotation: Vec<u32> = (0..n)
            .map(|j| (xs[(start + j) % n] + c - origin) % c)
            .collect();
        let better = match &best {
            None => true,
            Some(b) => {
                (rotation[n - 1], &rotation[1..n - 1]) < (b[n - 1], &b[1..n - 1])
            }
        };
        if better {
            best = Some(rotation);
        }
    }
    PitchClassSet::new(c, best.expect("non-empty combination"))
}

/// One normal-form representative per Tn-class of `k`-subsets of Z_c, in
/// lexicographic order. Cost grows as C(c-1, k-1).
pub fn tn_class_census(edo: u32, k: usize) -> Result<Vec<PitchClassSet>> {
    check_edo(edo)?;
    if k == 0 || k > edo as usize {
        return Err(Error::CardinalityOutOfRange {
            k,
            max: edo as usize,
        });
    }
    let mut out = Vec::new();
    for rest in (1..edo).combinations(k - 1) {
        let mask = rest.iter().fold(1u64, |m, &pc| m | (1u64 << pc));
        let candidate = PitchClassSet { edo, mask };
        if normal_form(&candidate)? == candidate {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Number of transpositions mapping the set onto itself.
pub fn symmetry_order(set: &PitchClassSet) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok((0..set.edo)
        .filter(|&tau| rotate(set.mask, tau, set.edo) == set.mask)
        .count() as u32)
}

/// Number of distinct transpositions of the set (size of its Tn-class).
pub fn orbit_size(set: &PitchClassSet) -> Result<u32> {
    Ok(set.edo / symmetry_order(set)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pcs(text: &str) -> PitchClassSet {
        parse_pcset(text, 12).unwrap()
    }

    #[test]
    fn parses_compact_and_list_forms() {
        assert_eq!(pcs("024579E").members(), vec![0, 2, 4, 5, 7, 9, 11]);
        assert_eq!(pcs("0").members(), vec![0]);
        assert_eq!(pcs("7, 0, 4"), pcs("047"));
        assert_eq!(parse_pcset("0,3,13", 19).unwrap().len(), 3);
        assert_eq!(parse_pcset("13", 19).unwrap().members(), vec![13]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_pcset("0,3,13", 12),
            Err(Error::PitchOutOfRange { value: 13, edo: 12 })
        ));
        assert!(matches!(parse_pcset("0x", 12), Err(Error::Parse { .. })));
        assert!(matches!(parse_pcset("004", 12), Err(Error::DuplicatePitch(0))));
        assert!(matches!(parse_pcset("  ", 12), Err(Error::Parse { .. })));
        assert!(matches!(parse_pcset("0,,3", 12), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_pcset("08", 7),
            Err(Error::PitchOutOfRange { value: 8, edo: 7 })
        ));
        // compact form is not available above 12-EDO
        assert!(matches!(
            parse_pcset("047", 19),
            Err(Error::PitchOutOfRange { value: 47, .. })
        ));
        assert!(matches!(parse_pcset("0", 0), Err(Error::EdoOutOfRange(0))));
        assert!(matches!(parse_pcset("0", 65), Err(Error::EdoOutOfRange(65))));
    }

    #[test]
    fn display_round_trips() {
        for text in ["024579E", "0235689E", "02468T", "0"] {
            assert_eq!(pcs(text).to_string(), text);
        }
        let s = parse_pcset("0,3,13", 24).unwrap();
        assert_eq!(s.to_string(), "0,3,13");
        assert_eq!(parse_pcset(&s.to_string(), 24).unwrap(), s);
    }

    #[test]
    fn transposition() {
        let major = pcs("024579E");
        assert_eq!(major.transpose(0), major);
        let wt = pcs("02468T");
        assert_eq!(wt.transpose(2), wt);
        assert_eq!(pcs("047").transpose(5).members(), vec![0, 5, 9]);
        assert_eq!(pcs("047").transpose(-7), pcs("047").transpose(5));
        let wide = PitchClassSet::new(64, [0, 63]).unwrap();
        assert_eq!(wide.transpose(1).members(), vec![0, 1]);
    }

    #[test]
    fn subset_enumeration() {
        let major = pcs("024579E");
        assert_eq!(subsets_of_cardinality(&major, 3).unwrap().count(), 35);
        let empty: Vec<_> = subsets_of_cardinality(&major, 0).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
        assert_eq!(subsets_of_cardinality(&pcs("02479"), 2).unwrap().count(), 10);
        assert!(subsets_of_cardinality(&major, 8).is_err());

        let pairs: Vec<String> = subsets_of_cardinality(&pcs("047"), 2)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(pairs, ["04", "07", "47"]);
    }

    #[test]
    fn interval_vectors() {
        assert_eq!(interval_vector(&pcs("024579E")).counts(), &[2, 5, 4, 3, 6, 1]);
        assert_eq!(interval_vector(&pcs("0")).counts(), &[0; 6]);
        assert_eq!(interval_vector(&pcs("02468T")).counts(), &[0, 6, 0, 6, 0, 3]);
        assert_eq!(interval_vector(&pcs("024579E")).to_string(), "<2,5,4,3,6,1>");
        assert_eq!(interval_vector(&pcs("024579E")).get(6), Some(1));
        assert_eq!(interval_vector(&pcs("024579E")).get(0), None);
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normal_form(&pcs("0158")).unwrap().to_string(), "0158");
        assert_eq!(normal_form(&pcs("0378")).unwrap().to_string(), "0158");
        assert_eq!(normal_form(&pcs("047")).unwrap().to_string(), "047");
        assert_eq!(normal_form(&pcs("470")).unwrap().to_string(), "047");
        assert_eq!(normal_form(&pcs("037")).unwrap().to_string(), "037");
        assert_eq!(normal_form(&pcs("2")).unwrap().to_string(), "0");
        assert_eq!(normal_form(&pcs("3478E")).unwrap().to_string(), "01458");
        assert!(matches!(
            normal_form(&PitchClassSet::empty(12).unwrap()),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn census_counts() {
        assert_eq!(tn_class_census(12, 7).unwrap().len(), 66);
        assert_eq!(tn_class_census(12, 1).unwrap().len(), 1);
        assert_eq!(tn_class_census(12, 5).unwrap().len(), 66);
        assert_eq!(tn_class_census(12, 3).unwrap().len(), 19);
        assert!(tn_class_census(12, 13).is_err());
        assert!(tn_class_census(12, 0).is_err());
    }

    #[test]
    fn symmetry_orders() {
        assert_eq!(symmetry_order(&pcs("02468T")).unwrap(), 6);
        assert_eq!(symmetry_order(&pcs("0235689E")).unwrap(), 4);
        assert_eq!(symmetry_order(&pcs("024579E")).unwrap(), 1);
        assert_eq!(symmetry_order(&pcs("03478E")).unwrap(), 3);
        assert_eq!(orbit_size(&pcs("048")).unwrap(), 4);
        assert!(symmetry_order(&PitchClassSet::empty(12).unwrap()).is_err());
    }

    #[test]
    fn ordering_is_lexicographic_on_members() {
        let mut v = [pcs("02"), pcs("015"), pcs("0")];
        v.sort();
        let printed: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, ["0", "015", "02"]);
    }
}
