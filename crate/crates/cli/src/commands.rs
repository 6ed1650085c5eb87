use std::path::Path;

use tonal_ambiguity::family::{self, ScaleFamily};
use tonal_ambiguity::measure;
use tonal_ambiguity::output::{Cell, Document, Table};
use tonal_ambiguity::pcset::{self, parse_pcset, PitchClassSet};
use tonal_ambiguity::tables::{self, TableContext};
use tonal_ambiguity::temporal;
use tonal_ambiguity::{Error, Result};

use crate::Common;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

/// A document to print, plus the error that makes the run unsuccessful, if any.
pub struct Outcome {
    pub document: Document,
    pub error: Option<Error>,
}

impl Outcome {
    fn ok(document: Document) -> Self {
        Self { document, error: None }
    }

    pub fn exit_code(&self) -> u8 {
        self.error.as_ref().map_or(0, exit_code)
    }
}

pub fn exit_code(err: &Error) -> u8 {
    if err.is_domain_error() {
        EXIT_DOMAIN
    } else {
        EXIT_USAGE
    }
}

/// A set spelling, or a reference scale name when the octave has 12 steps.
fn resolve_set(spec: &str, edo: u32) -> Result<PitchClassSet> {
    if let Some(set) = family::reference_scale_alias(spec) {
        if edo == 12 {
            return Ok(set);
        }
        return Err(Error::Parse {
            input: spec.to_string(),
            reason: "scale names are only available with --edo 12".into(),
        });
    }
    parse_pcset(spec, edo)
}

fn load_family(path: Option<&Path>, edo: u32) -> Result<ScaleFamily> {
    match path {
        Some(path) => family::load_family(path),
        None => family::reference_scales(edo),
    }
}

pub fn interpretations(set: &str, combo: &str, common: Common) -> Result<Outcome> {
    let set = resolve_set(set, common.edo)?;
    let combo = parse_pcset(combo, common.edo)?;
    let taus = measure::candidate_transpositions(&set, &combo)?;
    let t = taus.len() as u32;
    let mut table = Table::new(
        "interpretations",
        "Candidate transpositions",
        &["set", "combination", "t", "bits", "tonics", "transpositions"],
    );
    let (bits, tonics) = if t == 0 {
        (Cell::Absent, Cell::Absent)
    } else {
        let v = measure::AmbiguityValue::from_tonic_count(common.edo, f64::from(t));
        (Cell::real(v.bits, 2), Cell::real(v.tonic_count, 2))
    };
    let listed: Vec<String> = taus.iter().map(u32::to_string).collect();
    table.push(vec![
        Cell::text(set.to_string()),
        Cell::text(combo.to_string()),
        Cell::int(t),
        bits,
        tonics,
        Cell::text(listed.join(" ")),
    ]);
    Ok(Outcome {
        document: Document::single(table),
        error: (t == 0).then_some(Error::AbsentCombination),
    })
}

pub fn tai(sets: &[String], draws: Option<usize>, common: Common) -> Result<Outcome> {
    let sets = sets
        .iter()
        .map(|s| resolve_set(s, common.edo))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["set", "expected_bits", "tai", "nmi", "na"];
    if draws.is_some() {
        columns.extend(["draws", "bits_after_draws", "tonics_after_draws"]);
    }
    let mut summary = Table::new("tai", "Tonal ambiguity index", &columns);
    let mut profile = Table::new(
        "profile",
        "Expected information by combination cardinality",
        &["set", "k", "combinations", "expected_bits", "tonics"],
    );
    for set in &sets {
        let report = measure::tai(set)?;
        let mut row = vec![
            Cell::text(set.to_string()),
            Cell::real(report.expected_bits, 2),
            Cell::real(report.tai, 2),
            Cell::real(report.nmi, 3),
            Cell::real(report.na, 3),
        ];
        if let Some(n) = draws {
            let v = temporal::expected_info_for_profile(&report.profile, n)?;
            row.extend([Cell::int(n as i64), Cell::real(v.bits, 2), Cell::real(v.tonic_count, 2)]);
        }
        summary.push(row);
        for r in &report.profile.rows {
            profile.push(vec![
                Cell::text(set.to_string()),
                Cell::int(r.k as i64),
                Cell::int(r.combination_count as i64),
                Cell::real(r.expected_bits, 2),
                Cell::real(r.expected_tonics, 2),
            ]);
        }
    }
    Ok(Outcome::ok(Document {
        tables: vec![summary, profile],
    }))
}

pub fn tables(
    which: &str,
    family_path: Option<&Path>,
    weighting: &str,
    draws: usize,
    common: Common,
) -> Result<Outcome> {
    if common.edo != 12 {
        return Err(Error::UnsupportedEdo(common.edo));
    }
    let generator = tables::generator(which)?;
    let ctx = TableContext {
        family: family_path.map(family::load_family).transpose()?,
        weighting: family::census_weighting(weighting)?,
        draws,
    };
    Ok(Outcome::ok(generator.build(&ctx)?))
}

pub struct CurveRequest<'a> {
    pub sets: &'a [String],
    pub all_tnclasses: Option<usize>,
    pub nmax: usize,
    pub auc_baseline: Option<&'a str>,
    pub auc_range: Option<&'a str>,
    pub common: Common,
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let invalid = || Error::Parse {
        input: text.to_string(),
        reason: "expected START:END with positive integers".into(),
    };
    let (a, b) = text.split_once(':').ok_or_else(invalid)?;
    let start = a.trim().parse().map_err(|_| invalid())?;
    let end = b.trim().parse().map_err(|_| invalid())?;
    Ok((start, end))
}

pub fn curve(req: &CurveRequest) -> Result<Outcome> {
    let edo = req.common.edo;
    let mut sets = req
        .sets
        .iter()
        .map(|s| resolve_set(s, edo))
        .collect::<Result<Vec<_>>>()?;
    if let Some(k) = req.all_tnclasses {
        sets.extend(pcset::tn_class_census(edo, k)?);
    }
    if sets.is_empty() {
        return Err(Error::Parse {
            input: String::new(),
            reason: "give at least one set or --all-tnclasses K".into(),
        });
    }
    let with_auc = req.auc_baseline.is_some() || req.auc_range.is_some();
    let baseline = match req.auc_baseline {
        Some(name) => temporal::auc_baseline(name)?,
        None => temporal::auc_baselines()[0],
    };
    let range = match req.auc_range {
        Some(text) => parse_range(text)?,
        None => (temporal::DEFAULT_AUC_RANGE.0, temporal::DEFAULT_AUC_RANGE.1.min(req.nmax)),
    };

    let mut points = Table::new(
        "curve",
        "Expected candidate tonics after n draws",
        &["set", "n", "bits", "tonics"],
    );
    let mut areas = Table::new(
        "auc",
        format!(
            "Area above the {} baseline for n in {}..{}",
            baseline.name(),
            range.0,
            range.1
        ),
        &["set", "asymptote", "tai", "auc"],
    );
    for set in &sets {
        let report = measure::tai(set)?;
        let curve = temporal::curve_from_profile(&report.profile, req.nmax)?;
        for p in &curve.points {
            points.push(vec![
                Cell::text(set.to_string()),
                Cell::int(p.n as i64),
                Cell::real(p.bits, 4),
                Cell::real(p.tonics, 4),
            ]);
        }
        if with_auc {
            areas.push(vec![
                Cell::text(set.to_string()),
                Cell::int(curve.asymptote),
                Cell::real(report.tai, 4),
                Cell::real(temporal::auc(&curve, baseline, range)?, 4),
            ]);
        }
    }
    let mut tables = vec![points];
    if with_auc {
        tables.push(areas);
    }
    Ok(Outcome::ok(Document { tables }))
}

pub fn survivors(combo: &str, family_path: Option<&Path>, common: Common) -> Result<Outcome> {
    let family = load_family(family_path, common.edo)?;
    let combo = parse_pcset(combo, family.edo())?;
    let mut members = Table::new("survivors", "Scales containing the combination", &["scale", "t"]);
    let mut summary = Table::new(
        "disambiguation",
        "Scale-family disambiguation",
        &["combination", "family_size", "surviving", "gain_bits"],
    );
    let (report, error) = match family::family_survivors(&family, &combo) {
        Ok(report) => (Some(report), None),
        Err(err) if err.is_domain_error() => (None, Some(err)),
        Err(err) => return Err(err),
    };
    let survivors = report.as_ref().map_or(&[][..], |r| r.survivors.as_slice());
    for s in survivors {
        members.push(vec![Cell::text(s.name.clone()), Cell::int(s.t)]);
    }
    summary.push(vec![
        Cell::text(combo.to_string()),
        Cell::int(family.len() as i64),
        Cell::int(survivors.len() as i64),
        report.as_ref().map_or(Cell::Absent, |r| Cell::real(r.gain_bits, 2)),
    ]);
    Ok(Outcome {
        document: Document {
            tables: vec![members, summary],
        },
        error,
    })
}
