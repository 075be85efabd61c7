//! Center-definition files and the registry built from them.
//!
//! Each non-blank line is either a `#` comment or `INDEX = KIND : EXPR` with
//! `KIND` one of `bary` and `tril`. A comment directly above a definition of
//! the form `# X(n) name` supplies the center's display name.

use super::expr::parse_expr;
use super::{CenterDef, CoordKind};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use thiserror::Error;

/// Environment variable naming a replacement center-definition file.
pub const CENTER_FILE_ENV: &str = "CQ_CENTER_FILE";

const BUNDLED: &str = include_str!("../../data/centers.txt");

/// Centers that lie on the line at infinity for every triangle.
pub const INFINITE_FOR_ALL_TRIANGLES: &[u32] = &[
    30, 511, 512, 513, 514, 515, 516, 517, 518, 519, 520, 521, 522, 523, 524, 525, 526, 527, 528, 529, 530, 531,
    532, 533, 534, 535, 536, 537, 538, 539, 540, 541, 542, 543, 544, 545, 674, 680, 688, 690, 696, 698, 700, 702,
    704, 706, 708, 710, 712, 714, 716, 718, 720, 722, 724, 726, 730, 732, 734, 736, 740, 742, 744, 746, 752, 754,
    758, 760, 766, 768, 772, 776, 778, 780, 782, 784, 786, 788, 790, 792, 794, 796, 802, 804, 806, 808, 812, 814,
    816, 818, 824, 826, 830, 832, 834, 838, 888, 891, 900, 912, 916, 918, 924, 926, 928, 952, 971,
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: duplicate center index {index}")]
    Duplicate { line: usize, index: u32 },
    #[error("cannot read center file {path}: {message}")]
    Io { path: String, message: String },
}

impl ParseError {
    fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, col, message: message.into() }
    }
}

/// Immutable map from Kimberling index to definition.
#[derive(Debug, Clone, Default)]
pub struct CenterRegistry {
    defs: BTreeMap<u32, CenterDef>,
}

impl CenterRegistry {
    /// The definition file shipped with the crate.
    pub fn bundled() -> Self {
        parse_center_file(BUNDLED).expect("bundled center file parses")
    }

    /// The file named by `CQ_CENTER_FILE` if set, otherwise the bundled file.
    pub fn load() -> Result<Self, ParseError> {
        match std::env::var_os(CENTER_FILE_ENV) {
            Some(path) => Self::from_path(Path::new(&path)),
            None => Ok(Self::bundled()),
        }
    }

    pub fn from_path(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ParseError::Io { path: path.display().to_string(), message: e.to_string() })?;
        parse_center_file(&text)
    }

    pub fn get(&self, index: u32) -> Option<&CenterDef> {
        self.defs.get(&index)
    }

    pub fn contains(&self, index: u32) -> bool {
        self.defs.contains_key(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.defs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Registered indices known to lie at infinity for every triangle.
    pub fn known_at_infinity(&self) -> BTreeSet<u32> {
        INFINITE_FOR_ALL_TRIANGLES.iter().copied().filter(|n| self.contains(*n)).collect()
    }

    /// Requested indices absent from the registry.
    pub fn missing(&self, wanted: impl IntoIterator<Item = u32>) -> Vec<u32> {
        let mut m: Vec<u32> = wanted.into_iter().filter(|n| !self.contains(*n)).collect();
        m.sort_unstable();
        m.dedup();
        m
    }
}

fn parse_name(comment: &str) -> Option<(u32, String)> {
    let rest = comment.trim_start_matches('#').trim().strip_prefix("X(")?;
    let close = rest.find(')')?;
    let index = rest[..close].parse().ok()?;
    Some((index, rest[close + 1..].trim().to_string()))
}

/// Parses a center-definition file.
pub fn parse_center_file(text: &str) -> Result<CenterRegistry, ParseError> {
    let mut defs = BTreeMap::new();
    let mut pending_name: Option<(u32, String)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            pending_name = None;
            continue;
        }
        if trimmed.starts_with('#') {
            pending_name = parse_name(trimmed);
            continue;
        }
        let lead = raw.len() - raw.trim_start().len();
        let col_of = |byte: usize| raw[..byte].chars().count() + 1;
        let eq = raw.find('=').ok_or_else(|| ParseError::syntax(line, col_of(lead), "expected '='"))?;
        let idx_text = raw[..eq].trim();
        let index: u32 = idx_text
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| ParseError::syntax(line, col_of(lead), format!("invalid index '{idx_text}'")))?;
        let colon = raw[eq..]
            .find(':')
            .map(|k| k + eq)
            .ok_or_else(|| ParseError::syntax(line, col_of(eq) + 1, "expected ':' after kind"))?;
        let kind_text = raw[eq + 1..colon].trim();
        let kind = match kind_text {
            "bary" => CoordKind::Barycentric,
            "tril" => CoordKind::Trilinear,
            other => {
                return Err(ParseError::syntax(line, col_of(eq) + 1, format!("unknown kind '{other}'")));
            }
        };
        let body_start = colon + 1;
        let expr = parse_expr(&raw[body_start..])
            .map_err(|e| ParseError::syntax(line, col_of(body_start) + e.col - 1, e.message))?;
        let name = pending_name.take().filter(|(n, _)| *n == index).map(|(_, s)| s);
        if defs.insert(index, CenterDef { index, kind, expr, name }).is_some() {
            return Err(ParseError::Duplicate { line, index });
        }
    }
    Ok(CenterRegistry { defs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centerdefs::eval_center;

    #[test]
    fn centroid_line() {
        let reg = parse_center_file("2 = bary : 1").unwrap();
        let p = eval_center(reg.get(2).unwrap(), 2.0, 3.0, 4.0).unwrap();
        assert!((p.u - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn comments_names_and_blanks() {
        let reg = parse_center_file("# X(5) nine-point center\n5 = bary : a^2*(b^2+c^2) - (b^2-c^2)^2\n\n# free text\n").unwrap();
        assert_eq!(reg.len(), 1);
        assert_eq!(reg.get(5).unwrap().name.as_deref(), Some("nine-point center"));
    }

    #[test]
    fn unclosed_parenthesis_location() {
        let err = parse_center_file("9 = bary : a*(a").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 1, col: 14, message: "unclosed parenthesis".into() });
    }

    #[test]
    fn duplicate_and_bad_kind() {
        assert_eq!(parse_center_file("2 = bary : 1\n2 = tril : 1").unwrap_err(), ParseError::Duplicate { line: 2, index: 2 });
        assert!(matches!(parse_center_file("2 = cart : 1"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_center_file("x = bary : 1"), Err(ParseError::Syntax { col: 1, .. })));
        assert!(matches!(parse_center_file("0 = bary : 1"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn bundled_file_loads() {
        let reg = CenterRegistry::bundled();
        assert!(reg.len() >= 90);
        assert!(reg.contains(2) && reg.contains(402));
    }
}
