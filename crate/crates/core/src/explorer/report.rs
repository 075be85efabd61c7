//! Rendering of sweep findings as Markdown, CSV or JSON.
//!
//! Rows are grouped radiator, then shape, then relation and constant, with
//! the centers of each group sorted and compressed into ranges.

use super::RelationFinding;
use crate::quadgen::ShapeClass;
use crate::radiators::RadiatorKind;
use crate::relations::{ConstantForm, RelationKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

/// Text shown for a radiator without findings.
pub const EMPTY_ROW: &str = "No relationships were found";

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Md,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// Human-readable statement of a relation between `ABCD` and `FGHI`.
pub fn relation_label(relation: RelationKind, constant: ConstantForm) -> String {
    match relation {
        RelationKind::AreaRatio => format!("[ABCD] = {constant}·[FGHI]"),
        RelationKind::SameArea => "[ABCD] = [FGHI]".into(),
        RelationKind::Congruent => "ABCD ≅ FGHI".into(),
        RelationKind::Similar => "ABCD ∼ FGHI".into(),
        RelationKind::SamePerimeter => "perimeter(ABCD) = perimeter(FGHI)".into(),
        RelationKind::CongruentCircumcircles => "circumcircles congruent".into(),
        RelationKind::SameCircumcircle => "same circumcircle".into(),
    }
}

/// Sorted indices with consecutive runs of three or more written `a–b`.
pub fn compress_indices(indices: &BTreeSet<u32>) -> String {
    let v: Vec<u32> = indices.iter().copied().collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        if j - i >= 2 {
            parts.push(format!("{}–{}", v[i], v[j]));
        } else {
            parts.extend(v[i..=j].iter().map(u32::to_string));
        }
        i = j + 1;
    }
    parts.join(", ")
}

type GroupKey = (RadiatorKind, ShapeClass, RelationKind, ConstantForm, Option<String>);

struct Row {
    radiator: String,
    shape: String,
    relation: String,
    centers: String,
    suppressed_by: String,
}

fn rows(findings: &[RelationFinding], radiators: &[RadiatorKind], include_suppressed: bool) -> Vec<Row> {
    let mut groups: BTreeMap<GroupKey, BTreeSet<u32>> = BTreeMap::new();
    for f in findings.iter().filter(|f| include_suppressed || f.suppressed_by.is_none()) {
        let key = (f.radiator, f.shape, f.relation, f.constant_form(), f.suppressed_by.clone());
        groups.entry(key).or_default().insert(f.center);
    }
    let wanted: BTreeSet<RadiatorKind> = radiators.iter().copied().chain(groups.keys().map(|k| k.0)).collect();
    let mut out = Vec::new();
    for r in wanted {
        let mut any = false;
        for ((gr, shape, rel, form, sup), centers) in groups.iter().filter(|(k, _)| k.0 == r) {
            any = true;
            out.push(Row {
                radiator: gr.to_string(),
                shape: shape.to_string(),
                relation: relation_label(*rel, *form),
                centers: compress_indices(centers),
                suppressed_by: sup.clone().unwrap_or_default(),
            });
        }
        if !any {
            out.push(Row {
                radiator: r.to_string(),
                shape: String::new(),
                relation: EMPTY_ROW.into(),
                centers: String::new(),
                suppressed_by: String::new(),
            });
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders findings. `radiators` lists the radiators that get a row even
/// when nothing was found for them.
pub fn emit_report(
    findings: &[RelationFinding],
    radiators: &[RadiatorKind],
    format: ReportFormat,
    include_suppressed: bool,
) -> String {
    match format {
        ReportFormat::Json => {
            let shown: Vec<&RelationFinding> =
                findings.iter().filter(|f| include_suppressed || f.suppressed_by.is_none()).collect();
            serde_json::to_string_pretty(&shown).expect("findings serialize") + "\n"
        }
        ReportFormat::Csv => {
            let mut s = String::from("radiator,shape,relation,centers");
            s.push_str(if include_suppressed { ",suppressed_by\n" } else { "\n" });
            for r in rows(findings, radiators, include_suppressed) {
                let mut fields = vec![r.radiator, r.shape, r.relation, r.centers];
                if include_suppressed {
                    fields.push(r.suppressed_by);
                }
                let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
                let _ = writeln!(s, "{}", line.join(","));
            }
            s
        }
        ReportFormat::Md => {
            let mut s = String::new();
            if include_suppressed {
                s.push_str("| Radiator | Shape | Relation | Centers | Suppressed by |\n|---|---|---|---|---|\n");
            } else {
                s.push_str("| Radiator | Shape | Relation | Centers |\n|---|---|---|---|\n");
            }
            for r in rows(findings, radiators, include_suppressed) {
                let _ = write!(s, "| {} | {} | {} | {} |", r.radiator, r.shape, r.relation, r.centers);
                if include_suppressed {
                    let _ = write!(s, " {} |", r.suppressed_by);
                }
                s.push('\n');
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::ConstantRecord;

    fn finding(center: u32, p: i64, q: i64) -> RelationFinding {
        RelationFinding {
            shape: ShapeClass::Orthodiagonal,
            radiator: RadiatorKind::DiagonalPoint,
            center,
            relation: RelationKind::AreaRatio,
            constant: Some(ConstantRecord::from_form(ConstantForm::Rational { p, q }, p as f64 / q as f64)),
            confirmations: 5,
            suppressed_by: None,
        }
    }

    #[test]
    fn ranges_compress_runs() {
        let s: BTreeSet<u32> = [122, 123, 124, 125, 127, 339, 340].into_iter().collect();
        assert_eq!(compress_indices(&s), "122–125, 127, 339, 340");
    }

    #[test]
    fn groups_and_sorts_centers() {
        let fs = vec![finding(125, 2, 1), finding(122, 2, 1), finding(124, 2, 1), finding(123, 2, 1), finding(2, 9, 2)];
        let md = emit_report(&fs, &[RadiatorKind::DiagonalPoint], ReportFormat::Md, false);
        assert!(md.contains("| diagonal | orthodiagonal | [ABCD] = 2·[FGHI] | 122–125 |"), "{md}");
        assert!(md.contains("[ABCD] = 9/2·[FGHI] | 2 |"));
    }

    #[test]
    fn empty_radiator_gets_a_row() {
        let md = emit_report(&[], &[RadiatorKind::Anticenter], ReportFormat::Md, false);
        assert!(md.contains(EMPTY_ROW));
        let csv = emit_report(&[], &[RadiatorKind::Anticenter], ReportFormat::Csv, false);
        assert!(csv.lines().nth(1).unwrap().starts_with("anticenter,,No relationships"));
    }

    #[test]
    fn suppressed_hidden_unless_requested() {
        let mut f = finding(2, 9, 2);
        f.suppressed_by = Some("general with arbitrary point".into());
        let md = emit_report(&[f.clone()], &[RadiatorKind::DiagonalPoint], ReportFormat::Md, false);
        assert!(md.contains(EMPTY_ROW));
        let md = emit_report(&[f], &[RadiatorKind::DiagonalPoint], ReportFormat::Md, true);
        assert!(md.contains("general with arbitrary point"));
    }

    #[test]
    fn json_round_trips() {
        let fs = vec![finding(2, 9, 2)];
        let js = emit_report(&fs, &[], ReportFormat::Json, false);
        let back: Vec<RelationFinding> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, fs);
    }
}
