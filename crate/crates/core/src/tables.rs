//! Named table generators regenerating every published table from scratch.
//!
//! Each generator implements [`TableGenerator`] and is registered in
//! [`generators`]; the CLI selects one by name.

use crate::error::{Error, Result};
use crate::family::{self, CensusWeighting, PoolStats, ScaleFamily};
use crate::measure::{self, SetReport};
use crate::output::{Cell, Document, Table};
use crate::pcset::{self, parse_pcset, PitchClassSet};
use crate::temporal;

/// Inputs a generator may take from the caller.
pub struct TableContext {
    /// Replaces the built-in family for `t7` and `appendix`.
    pub family: Option<ScaleFamily>,
    pub weighting: &'static dyn CensusWeighting,
    pub draws: usize,
}

impl Default for TableContext {
    fn default() -> Self {
        Self {
            family: None,
            weighting: family::default_census_weighting(),
            draws: temporal::DEFAULT_DRAWS,
        }
    }
}

pub trait TableGenerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn build(&self, ctx: &TableContext) -> Result<Document>;
}

const MAJOR: &str = "024579E";

fn scale(spelling: &str) -> PitchClassSet {
    parse_pcset(spelling, 12).expect("built-in spelling")
}

fn reference() -> ScaleFamily {
    family::reference_scales(12).expect("built-in registry")
}

struct Dyads;
struct Trichords;
struct DiatonicProfile;
struct CommonScales;
struct LimitedTransposition;
struct SetAmbiguity;
struct HeptachordCensus;
struct CommonPool;
struct Appendix;
struct Draws;

impl TableGenerator for Dyads {
    fn name(&self) -> &'static str {
        "t1"
    }
    fn description(&self) -> &'static str {
        "dyad classes of the diatonic set: t, bits, instances, probability"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        let e = measure::expected_info_at_cardinality(&scale(MAJOR), 2)?;
        let mut t = Table::new(
            "t1",
            "Information values for 2-note combinations in the diatonic set",
            &["combination", "t", "bits", "instances", "p"],
        );
        for b in &e.breakdown {
            t.push(vec![
                Cell::text(b.class.representative.to_string()),
                Cell::int(b.t),
                Cell::real(b.bits, 2),
                Cell::int(b.class.multiplicity as i64),
                Cell::text(b.probability.to_string()),
            ]);
        }
        Ok(Document::single(t))
    }
}

impl TableGenerator for Trichords {
    fn name(&self) -> &'static str {
        "t2"
    }
    fn description(&self) -> &'static str {
        "every trichord class against the diatonic set, absent ones included"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        let major = scale(MAJOR);
        let e = measure::expected_info_at_cardinality(&major, 3)?;
        let mut t = Table::new(
            "t2",
            "Information values for all trichords in the diatonic set",
            &["combination", "bits", "p", "fraction", "instances"],
        );
        for class in pcset::tn_class_census(12, 3)? {
            let found = e.breakdown.iter().find(|b| b.class.representative == class);
            let instances = found.map_or(0, |b| b.class.multiplicity);
            let bits = found.map_or(Cell::Absent, |b| Cell::real(b.bits, 2));
            t.push(vec![
                Cell::text(class.to_string()),
                bits,
                Cell::real(instances as f64 / e.combination_count as f64, 3),
                Cell::text(format!("{}/{}", instances, e.combination_count)),
                Cell::int(instances as i64),
            ]);
        }
        Ok(Document::single(t))
    }
}

fn summary_table(name: &str, reports: &[(&str, &SetReport)]) -> Table {
    let mut t = Table::new(
        name,
        "Set-level expected information and tonal ambiguity index",
        &["set", "spelling", "expected_bits", "tai", "nmi", "na"],
    );
    for (label, r) in reports {
        t.push(vec![
            Cell::text(*label),
            Cell::text(r.set.to_string()),
            Cell::real(r.expected_bits, 2),
            Cell::real(r.tai, 2),
            Cell::real(r.nmi, 3),
            Cell::real(r.na, 3),
        ]);
    }
    t
}

impl TableGenerator for DiatonicProfile {
    fn name(&self) -> &'static str {
        "t3"
    }
    fn description(&self) -> &'static str {
        "expected information per cardinality in the diatonic set, with the set-level index"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        let report = measure::tai(&scale(MAJOR))?;
        let mut t = Table::new(
            "t3",
            "Expected information for combinations of different cardinalities in the diatonic set",
            &["k", "combinations", "expected_bits", "candidate_tonics"],
        );
        for row in &report.profile.rows {
            t.push(vec![
                Cell::int(row.k as i64),
                Cell::int(row.combination_count as i64),
                Cell::real(row.expected_bits, 2),
                Cell::real(row.expected_tonics, 1),
            ]);
        }
        Ok(Document {
            tables: vec![t, summary_table("t3-summary", &[("Major", &report)])],
        })
    }
}

fn tonics_by_cardinality(name: &str, title: &str, names: &[&str]) -> Result<Document> {
    let family = reference();
    let reports = names
        .iter()
        .map(|n| {
            let entry = family.get(n).expect("registered scale");
            measure::tai(&entry.set)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_k = reports.iter().map(|r| r.profile.rows.len()).max().unwrap_or(0);
    let mut columns = vec!["k".to_string()];
    columns.extend(
        names
            .iter()
            .zip(&reports)
            .map(|(n, r)| format!("{n} ({})", r.set)),
    );
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new(name, title, &column_refs);
    for k in 1..=max_k {
        let mut row = vec![Cell::text(k.to_string())];
        row.extend(reports.iter().map(|r| {
            r.profile
                .rows
                .get(k - 1)
                .map_or(Cell::Absent, |p| Cell::real(p.expected_tonics, 2))
        }));
        t.push(row);
    }
    let mut set_row = vec![Cell::text("Set")];
    set_row.extend(reports.iter().map(|r| Cell::real(r.tai, 2)));
    t.push(set_row);
    Ok(Document::single(t))
}

impl TableGenerator for CommonScales {
    fn name(&self) -> &'static str {
        "t3-scales"
    }
    fn description(&self) -> &'static str {
        "tonal interpretations per cardinality for common scales with uniqueness"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        tonics_by_cardinality(
            "t3-scales",
            "Tonal interpretations of common scales by combination cardinality",
            &["Major", "Major Pentatonic", "Asc. Melodic Minor", "Harmonic Minor"],
        )
    }
}

impl TableGenerator for LimitedTransposition {
    fn name(&self) -> &'static str {
        "t4"
    }
    fn description(&self) -> &'static str {
        "tonal interpretations per cardinality for three modes of limited transposition"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        tonics_by_cardinality(
            "t4",
            "Tonal interpretations in modes of limited transposition",
            &["Whole-Tone", "Octatonic", "Augmented"],
        )
    }
}

impl TableGenerator for SetAmbiguity {
    fn name(&self) -> &'static str {
        "t5"
    }
    fn description(&self) -> &'static str {
        "tonal ambiguity index of the seven reference scales, least ambiguous first"
    }
    fn build(&self, _: &TableContext) -> Result<Document> {
        let family = reference();
        let mut reports = family
            .entries()
            .iter()
            .map(|e| Ok((e.name.as_str(), measure::tai(&e.set)?)))
            .collect::<Result<Vec<_>>>()?;
        reports.sort_by(|a, b| a.1.tai.total_cmp(&b.1.tai));
        let refs: Vec<(&str, &SetReport)> = reports.iter().map(|(n, r)| (*n, r)).collect();
        let mut t = summary_table("t5", &refs);
        t.title = "Reference scales and their tonal ambiguity index".into();
        Ok(Document::single(t))
    }
}

fn pool_row(k: usize, s: &PoolStats) -> Vec<Cell> {
    let summary = if s.min == s.max {
        s.max.to_string()
    } else {
        format!("{:.1} ({}–{})", s.average, s.min, s.max)
    };
    vec![
        Cell::int(k as i64),
        Cell::real(s.average, 1),
        Cell::int(s.min as i64),
        Cell::int(s.max as i64),
        Cell::text(summary),
    ]
}

const POOL_COLUMNS: [&str; 5] = ["cardinality", "average", "min", "max", "summary"];

impl TableGenerator for HeptachordCensus {
    fn name(&self) -> &'static str {
        "t6"
    }
    fn description(&self) -> &'static str {
        "how many of the 66 heptachord classes survive combinations of each size"
    }
    fn build(&self, ctx: &TableContext) -> Result<Document> {
        let mut t = Table::new(
            "t6",
            format!(
                "Possible 7-note sets given a combination ({} weighting)",
                ctx.weighting.name()
            ),
            &POOL_COLUMNS,
        );
        let members = pcset::tn_class_census(12, 7)?;
        for k in 1..=6 {
            let s = family::pool_statistics(&members, k, ctx.weighting)?;
            t.push(pool_row(k, &s));
        }
        Ok(Document::single(t))
    }
}

impl TableGenerator for CommonPool {
    fn name(&self) -> &'static str {
        "t7"
    }
    fn description(&self) -> &'static str {
        "how many common scales survive combinations of each size"
    }
    fn build(&self, ctx: &TableContext) -> Result<Document> {
        let family = ctx.family.clone().unwrap_or_else(family::common_pool);
        let members: Vec<_> = family.sets().copied().collect();
        let largest = members.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut t = Table::new(
            "t7",
            "Remaining viable common sets given a combination",
            &POOL_COLUMNS,
        );
        for k in 1..=largest.min(6) {
            let s = family::pool_statistics(&members, k, ctx.weighting)?;
            t.push(pool_row(k, &s));
        }
        Ok(Document::single(t))
    }
}

impl TableGenerator for Appendix {
    fn name(&self) -> &'static str {
        "appendix"
    }
    fn description(&self) -> &'static str {
        "every combination class of 1-6 notes with its t in each reference scale"
    }
    fn build(&self, ctx: &TableContext) -> Result<Document> {
        let family = ctx.family.clone().unwrap_or_else(reference);
        let mut columns = vec!["combo"];
        columns.extend(family.entries().iter().map(|e| e.label.as_str()));
        columns.push("possible_sets");
        let mut t = Table::new("appendix", "Possible transpositions by combination", &columns);
        for row in family::appendix_table(&family, 6)? {
            let mut cells = vec![Cell::text(row.combo.to_string())];
            cells.extend(
                row.per_scale_t
                    .iter()
                    .map(|t| t.map_or(Cell::Absent, Cell::int)),
            );
            cells.push(Cell::int(row.possible_sets as i64));
            t.push(cells);
        }
        Ok(Document::single(t))
    }
}

impl TableGenerator for Draws {
    fn name(&self) -> &'static str {
        "draws"
    }
    fn description(&self) -> &'static str {
        "distinct-pitch distribution for n draws from the diatonic set and the resulting information"
    }
    fn build(&self, ctx: &TableContext) -> Result<Document> {
        let major = scale(MAJOR);
        let profile = measure::cardinality_profile(&major)?;
        let dist = temporal::distinct_count_distribution(ctx.draws, major.len())?;
        let mut t = Table::new(
            "draws",
            format!("Distinct pitches in {} draws from the diatonic set", ctx.draws),
            &["k", "p", "expected_bits", "weighted_bits"],
        );
        for (row, p) in profile.rows.iter().zip(&dist.probabilities) {
            t.push(vec![
                Cell::int(row.k as i64),
                Cell::real(*p, 3),
                Cell::real(row.expected_bits, 2),
                Cell::real(p * row.expected_bits, 3),
            ]);
        }
        let v = temporal::expected_info_for_profile(&profile, ctx.draws)?;
        let mut s = Table::new("draws-summary", "Expected information after the draws", &["n", "bits", "tonics"]);
        s.push(vec![
            Cell::int(ctx.draws as i64),
            Cell::real(v.bits, 2),
            Cell::real(v.tonic_count, 2),
        ]);
        Ok(Document { tables: vec![t, s] })
    }
}

static GENERATORS: [&dyn TableGenerator; 10] = [
    &Dyads,
    &Trichords,
    &DiatonicProfile,
    &CommonScales,
    &LimitedTransposition,
    &SetAmbiguity,
    &HeptachordCensus,
    &CommonPool,
    &Appendix,
    &Draws,
];

pub fn generators() -> &'static [&'static dyn TableGenerator] {
    &GENERATORS
}

pub fn generator(name: &str) -> Result<&'static dyn TableGenerator> {
    GENERATORS
        .iter()
        .copied()
        .find(|g| g.name() == name)
        .ok_or_else(|| Error::UnknownName {
            kind: "table",
            name: name.to_string(),
            choices: GENERATORS.iter().map(|g| g.name()).collect::<Vec<_>>().join(", "),
        })
}
