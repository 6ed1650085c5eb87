//! Disambiguation across scale families.
//!
//! Besides asking which transposition of a known set is in play, a listener has
//! to work out which set it is. A combination "occurs in" a set when it is
//! contained in some transposition of it.

use std::collections::HashSet;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure;
use crate::pcset::{self, parse_pcset, Combination, PitchClassSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaleEntry {
    pub name: String,
    /// Short column label (`M`, `hm`, ...). Defaults to the name.
    pub label: String,
    pub set: PitchClassSet,
}

/// A named, ordered collection of reference sets sharing one chromatic size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaleFamily {
    edo: u32,
    entries: Vec<ScaleEntry>,
}

impl ScaleFamily {
    pub fn new(entries: Vec<ScaleEntry>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidFamily("a family needs at least one set".into()))?;
        let edo = first.set.edo();
        let mut names = HashSet::new();
        for entry in &entries {
            if entry.set.edo() != edo {
                return Err(Error::EdoMismatch {
                    left: edo,
                    right: entry.set.edo(),
                });
            }
            if entry.set.is_empty() {
                return Err(Error::InvalidFamily(format!("{} is empty", entry.name)));
            }
            if !names.insert(entry.name.as_str()) {
                return Err(Error::InvalidFamily(format!("duplicate name {}", entry.name)));
            }
        }
        Ok(Self { edo, entries })
    }

    pub fn edo(&self) -> u32 {
        self.edo
    }

    pub fn entries(&self) -> &[ScaleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = &PitchClassSet> {
        self.entries.iter().map(|e| &e.set)
    }

    pub fn get(&self, name: &str) -> Option<&ScaleEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The family minus the named member.
    pub fn without(&self, name: &str) -> Result<Self> {
        Self::new(
            self.entries
                .iter()
                .filter(|e| e.name != name)
                .cloned()
                .collect(),
        )
    }
}

/// (name, label, compact spelling, CLI alias)
const REFERENCE: [(&str, &str, &str, &str); 7] = [
    ("Major", "M", "024579E", "major"),
    ("Asc. Melodic Minor", "mm", "023579E", "melodic-minor"),
    ("Harmonic Minor", "hm", "023578E", "harmonic-minor"),
    ("Whole-Tone", "WT", "02468T", "whole-tone"),
    ("Octatonic", "O", "0235689E", "octatonic"),
    ("Major Pentatonic", "P", "02479", "pentatonic"),
    ("Augmented", "A", "03478E", "augmented"),
];

/// The member left out of the default common-scale pool.
pub const UNCOMMON_REFERENCE_SCALE: &str = "Augmented";

/// The seven built-in reference scales (12-EDO only), stored in conventional spelling.
pub fn reference_scales(edo: u32) -> Result<ScaleFamily> {
    if edo != 12 {
        return Err(Error::UnsupportedEdo(edo));
    }
    let entries = REFERENCE
        .iter()
        .map(|&(name, label, spelling, _)| {
            Ok(ScaleEntry {
                name: name.to_string(),
                label: label.to_string(),
                set: parse_pcset(spelling, 12)?,
            })
        })
        .collect::<Result<_>>()?;
    ScaleFamily::new(entries)
}

/// Major, both minors, pentatonic, whole-tone and octatonic.
pub fn common_pool() -> ScaleFamily {
    reference_scales(12)
        .and_then(|f| f.without(UNCOMMON_REFERENCE_SCALE))
        .expect("built-in registry is valid")
}

/// Looks up a reference scale by CLI alias (`major`, `whole-tone`, ...) or full name.
pub fn reference_scale_alias(alias: &str) -> Option<PitchClassSet> {
    let wanted = alias.trim().to_ascii_lowercase();
    REFERENCE
        .iter()
        .find(|(name, _, _, a)| *a == wanted || name.to_ascii_lowercase() == wanted)
        .map(|&(_, _, spelling, _)| parse_pcset(spelling, 12).expect("built-in spelling"))
}

pub fn reference_scale_aliases() -> impl Iterator<Item = &'static str> {
    REFERENCE.iter().map(|r| r.3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub name: String,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivorReport {
    pub combination: Combination,
    pub survivors: Vec<Survivor>,
    /// `log2(|F| / |survivors|)`.
    pub gain_bits: f64,
}

/// Members of the family in which `combo` occurs, with their `t`, and the disambiguation gain.
pub fn family_survivors(family: &ScaleFamily, combo: &Combination) -> Result<SurvivorReport> {
    let mut survivors = Vec::new();
    for entry in &family.entries {
        let t = measure::tonal_ambiguity(&entry.set, combo)?;
        if t > 0 {
            survivors.push(Survivor {
                name: entry.name.clone(),
                t,
            });
        }
    }
    if survivors.is_empty() {
        return Err(Error::AbsentFromFamily);
    }
    let gain_bits = (family.len() as f64 / survivors.len() as f64).log2();
    Ok(SurvivorReport {
        combination: *combo,
        survivors,
        gain_bits,
    })
}

/// Average and range of surviving members over a population of combination classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PoolStats {
    pub average: f64,
    pub min: usize,
    pub max: usize,
    /// Number of combination classes that occur in at least one member.
    pub classes: usize,
}

/// How each combination Tn-class is weighted when averaging survivor counts.
pub trait CensusWeighting: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Weight of `class` (a normal form) given the members it occurs in.
    fn weight(&self, class: &PitchClassSet, members: &[PitchClassSet]) -> Result<f64>;
}

struct DistinctClass;
struct SubsetOrbit;
struct InstanceCount;

impl CensusWeighting for DistinctClass {
    fn name(&self) -> &'static str {
        "distinct-class"
    }
    fn description(&self) -> &'static str {
        "each distinct combination Tn-class counts once"
    }
    fn weight(&self, _: &PitchClassSet, _: &[PitchClassSet]) -> Result<f64> {
        Ok(1.0)
    }
}

impl CensusWeighting for SubsetOrbit {
    fn name(&self) -> &'static str {
        "subset"
    }
    fn description(&self) -> &'static str {
        "each distinct k-subset of Z_c counts once (class weighted by its number of transpositions)"
    }
    fn weight(&self, class: &PitchClassSet, _: &[PitchClassSet]) -> Result<f64> {
        Ok(f64::from(pcset::orbit_size(class)?))
    }
}

impl CensusWeighting for InstanceCount {
    fn name(&self) -> &'static str {
        "instance"
    }
    fn description(&self) -> &'static str {
        "class weighted by its total number of instances inside the members"
    }
    fn weight(&self, class: &PitchClassSet, members: &[PitchClassSet]) -> Result<f64> {
        // instances of X inside S = t_S(X) / symmetry order of X
        let symmetry = pcset::symmetry_order(class)?;
        let mut total = 0u32;
        for set in members {
            total += measure::tonal_ambiguity(set, class)?;
        }
        Ok(f64::from(total / symmetry))
    }
}

static WEIGHTINGS: [&dyn CensusWeighting; 3] = [&DistinctClass, &SubsetOrbit, &InstanceCount];

/// Registered weightings; the first is the default.
pub fn census_weightings() -> &'static [&'static dyn CensusWeighting] {
    &WEIGHTINGS
}

pub fn census_weighting(name: &str) -> Result<&'static dyn CensusWeighting> {
    WEIGHTINGS
        .iter()
        .copied()
        .find(|w| w.name() == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "census weighting",
            name: name.to_string(),
            choices: WEIGHTINGS.iter().map(|w| w.name()).collect::<Vec<_>>().join(", "),
        })
}

pub fn default_census_weighting() -> &'static dyn CensusWeighting {
    WEIGHTINGS[0]
}

/// Survivor statistics of every `k`-note combination class over `members`.
pub fn pool_statistics(
    members: &[PitchClassSet],
    combo_cardinality: usize,
    weighting: &dyn CensusWeighting,
) -> Result<PoolStats> {
    let edo = members.first().ok_or(Error::EmptySet)?.edo();
    let mut weighted = 0.0;
    let mut total_weight = 0.0;
    let mut min = usize::MAX;
    let mut max = 0;
    let mut classes = 0;
    for class in pcset::tn_class_census(edo, combo_cardinality)? {
        let mut survivors = 0;
        for set in members {
            if measure::tonal_ambiguity(set, &class)? > 0 {
                survivors += 1;
            }
        }
        if survivors == 0 {
            continue;
        }
        let w = weighting.weight(&class, members)?;
        weighted += w * survivors as f64;
        total_weight += w;
        min = min.min(survivors);
        max = max.max(survivors);
        classes += 1;
    }
    if classes == 0 {
        return Err(Error::AbsentFromFamily);
    }
    Ok(PoolStats {
        average: weighted / total_weight,
        min,
        max,
        classes,
    })
}

/// Survivor statistics against the family of every Tn-class of `set_cardinality`-note sets.
pub fn census_disambiguation(
    edo: u32,
    set_cardinality: usize,
    combo_cardinality: usize,
    weighting: &dyn CensusWeighting,
) -> Result<PoolStats> {
    let members = pcset::tn_class_census(edo, set_cardinality)?;
    pool_statistics(&members, combo_cardinality, weighting)
}

/// Survivor statistics for a small named family, weighting classes uniformly.
pub fn common_pool_profile(family: &ScaleFamily, combo_cardinality: usize) -> Result<PoolStats> {
    let members: Vec<_> = family.sets().copied().collect();
    pool_statistics(&members, combo_cardinality, default_census_weighting())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixRow {
    pub combo: PitchClassSet,
    /// `t` per family member, in family order; `None` where absent.
    pub per_scale_t: Vec<Option<u32>>,
    pub possible_sets: usize,
}

/// Every combination class of cardinality `1..=max_cardinality` occurring in
/// at least one member, ordered by cardinality then normal form.
pub fn appendix_table(family: &ScaleFamily, max_cardinality: usize) -> Result<Vec<AppendixRow>> {
    let mut rows = Vec::new();
    for k in 1..=max_cardinality.min(family.edo as usize) {
        for combo in pcset::tn_class_census(family.edo, k)? {
            let per_scale_t = family
                .sets()
                .map(|s| measure::tonal_ambiguity(s, &combo).map(|t| (t > 0).then_some(t)))
                .collect::<Result<Vec<_>>>()?;
            let possible_sets = per_scale_t.iter().flatten().count();
            if possible_sets > 0 {
                rows.push(AppendixRow {
                    combo,
                    per_scale_t,
                    possible_sets,
                });
            }
        }
    }
    Ok(rows)
}

/// Parses the line-oriented family format:
///
/// ```text
/// edo = 12
/// # comment
/// Major = 024579E
/// Blues = 0,3,5,6,7,10
/// ```
pub fn parse_family(text: &str) -> Result<ScaleFamily> {
    let mut edo = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::FamilyFormat {
            line: line_no,
            reason: "expected `name = setspec`".into(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        match edo {
            None => {
                if key != "edo" {
                    return Err(Error::FamilyFormat {
                        line: line_no,
                        reason: "first entry must be `edo = N`".into(),
                    });
                }
                edo = Some(value.parse::<u32>().map_err(|_| Error::FamilyFormat {
                    line: line_no,
                    reason: format!("{value:?} is not a chromatic size"),
                })?);
            }
            Some(c) => {
                if key.is_empty() {
                    return Err(Error::FamilyFormat {
                        line: line_no,
                        reason: "missing set name".into(),
                    });
                }
                let set = parse_pcset(value, c).map_err(|e| Error::FamilyFormat {
                    line: line_no,
                    reason: e.to_string(),
                })?;
                entries.push(ScaleEntry {
                    name: key.to_string(),
                    label: key.to_string(),
                    set,
                });
            }
        }
    }
    if edo.is_none() {
        return Err(Error::FamilyFormat {
            line: 1,
            reason: "missing `edo = N`".into(),
        });
    }
    ScaleFamily::new(entries)
}

pub fn load_family(path: &Path) -> Result<ScaleFamily> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::FamilyFormat {
        line: 0,
        reason: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_family(&text)
}
