//! The discovery sweep over (shape, radiator, center) cells, with
//! multi-sample confirmation and suppression of inherited findings.

pub mod report;
pub mod square;

pub use report::{emit_report, ReportFormat};
pub use square::{square_ratio, square_ratio_table};

use crate::centerdefs::{CenterDef, CenterRegistry};
use crate::geomcore::Point;
use crate::quadgen::{generate, AncestryGraph, GenError, QuadInstance, ShapeClass};
use crate::radiators::{applies_to, coincidence_for, construct, RadiatorError, RadiatorKind};
use crate::relations::{
    central_quadrilateral, measure, recognize_constant, CentralError, ConstantForm, Measurements, RecognitionMode,
    RecognizedConstant, RelationKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Default number of instances per cell.
pub const DEFAULT_SAMPLES: usize = 5;
/// Relative agreement required between per-sample ratios.
pub const CONSISTENCY_TOL: f64 = 1e-6;
/// Fresh instances tried per sample while looking for an interior radiator.
const RETRIES_PER_SAMPLE: u64 = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("centers not in registry: {0:?}")]
    MissingCenters(Vec<u32>),
    #[error("samples per cell must be at least 3, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Generator(#[from] GenError),
}

/// Parameters of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub shapes: Vec<ShapeClass>,
    pub radiators: Vec<RadiatorKind>,
    pub centers: Vec<u32>,
    pub samples: usize,
    pub base_seed: u64,
    pub mode: RecognitionMode,
    pub consistency_tol: f64,
}

impl SweepConfig {
    pub fn new(shapes: Vec<ShapeClass>, radiators: Vec<RadiatorKind>, centers: Vec<u32>) -> Self {
        Self {
            shapes,
            radiators,
            centers,
            samples: DEFAULT_SAMPLES,
            base_seed: 0,
            mode: RecognitionMode::Rational,
            consistency_tol: CONSISTENCY_TOL,
        }
    }

    pub fn with_mode(mut self, mode: RecognitionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }
}

/// Serialized form of a recognized constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub kind: String,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub d: Option<i64>,
    pub r: Option<i64>,
    pub value: f64,
}

impl ConstantRecord {
    pub fn from_form(form: ConstantForm, value: f64) -> Self {
        let (kind, p, q, d, r) = match form {
            ConstantForm::Rational { p, q } => ("rational", Some(p), Some(q), None, None),
            ConstantForm::QuadIrrational { p, q, d, r } => ("quadIrrational", Some(p), Some(q), Some(d), Some(r)),
            ConstantForm::Unrecognized => ("unrecognized", None, None, None, None),
        };
        Self { kind: kind.to_string(), p, q, d, r, value }
    }

    pub fn form(&self) -> ConstantForm {
        match (self.kind.as_str(), self.p, self.q, self.d, self.r) {
            ("rational", Some(p), Some(q), _, _) => ConstantForm::Rational { p, q },
            ("quadIrrational", Some(p), Some(q), Some(d), Some(r)) => ConstantForm::QuadIrrational { p, q, d, r },
            _ => ConstantForm::Unrecognized,
        }
    }
}

/// A relation confirmed on every sample of a cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationFinding {
    pub shape: ShapeClass,
    pub radiator: RadiatorKind,
    pub center: u32,
    pub relation: RelationKind,
    pub constant: Option<ConstantRecord>,
    pub confirmations: usize,
    pub suppressed_by: Option<String>,
}

impl RelationFinding {
    fn key(&self) -> (RadiatorKind, ShapeClass, RelationKind, ConstantForm, u32) {
        (self.radiator, self.shape, self.relation, self.constant_form(), self.center)
    }

    pub fn constant_form(&self) -> ConstantForm {
        self.constant.as_ref().map(|c| c.form()).unwrap_or(ConstantForm::Unrecognized)
    }

    /// Same relation and constant, ignoring where it was found.
    pub fn same_claim(&self, other: &RelationFinding) -> bool {
        self.center == other.center && self.relation == other.relation && self.constant_form() == other.constant_form()
    }
}

/// Why a cell produced no findings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SkipReason {
    NotApplicable,
    AtInfinity,
    Undefined,
    ConstructionFailed,
}

/// A cell that was skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkippedCell {
    pub shape: ShapeClass,
    pub radiator: RadiatorKind,
    pub center: u32,
    pub reason: SkipReason,
}

/// Everything a sweep produced, including cells run only for suppression.
#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// Findings on the requested shapes and radiators, sorted.
    pub findings: Vec<RelationFinding>,
    /// Findings on auxiliary cells (ancestor shapes, arbitrary radiator).
    pub auxiliary: Vec<RelationFinding>,
    pub skipped: Vec<SkippedCell>,
}

/// Execution strategy for the cell loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the random stream for one cell.
pub fn cell_seed(base: u64, shape: ShapeClass, radiator: RadiatorKind, center: u32) -> u64 {
    let mut h = splitmix(base);
    for part in [shape as u64, radiator as u64, center as u64] {
        h = splitmix(h ^ part);
    }
    h
}

enum CellResult {
    Skipped(SkipReason),
    Samples(Vec<Measurements>),
}

/// One reference instance and radiator for `shape`, drawn from `seed`.
/// Prefers an instance whose radiator is strictly interior, so the radial
/// triangles tile ABCD, and falls back to the first exterior one.
pub fn sample_instance(shape: ShapeClass, radiator: RadiatorKind, seed: u64) -> Result<(QuadInstance, Point), SkipReason> {
    if !applies_to(radiator, shape) {
        return Err(SkipReason::NotApplicable);
    }
    let mut fallback = None;
    for attempt in 0..RETRIES_PER_SAMPLE {
        let sub = splitmix(seed ^ splitmix(attempt));
        let Ok(q) = generate(shape, sub) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(sub);
        match construct(radiator, &q, &mut rng) {
            Ok(r) if r.inside => return Ok((q, r.point)),
            Ok(r) => {
                fallback.get_or_insert((q, r.point));
            }
            Err(RadiatorError::NotApplicable) => return Err(SkipReason::NotApplicable),
            Err(_) => {}
        }
    }
    fallback.ok_or(SkipReason::ConstructionFailed)
}

fn sample_cell(shape: ShapeClass, radiator: RadiatorKind, def: &CenterDef, seed: u64, samples: usize) -> CellResult {
    let mut out = Vec::with_capacity(samples);
    for s in 0..samples as u64 {
        let (q, e) = match sample_instance(shape, radiator, splitmix(seed ^ s)) {
            Ok(x) => x,
            Err(r) => return CellResult::Skipped(r),
        };
        match central_quadrilateral(&q, e, def) {
            Ok(c) => out.push(measure(&q, &c)),
            Err(CentralError::SkippedInfinity) => return CellResult::Skipped(SkipReason::AtInfinity),
            Err(CentralError::Undefined) => return CellResult::Skipped(SkipReason::Undefined),
        }
    }
    CellResult::Samples(out)
}

/// Relations holding on every sample, with area ratios agreeing to `tol`
/// and recognized as the same constant.
pub fn confirm(samples: &[Measurements], mode: RecognitionMode, tol: f64) -> Vec<(RelationKind, Option<RecognizedConstant>)> {
    let mut out = Vec::new();
    let n = samples.len();
    if n == 0 {
        return out;
    }
    let ratios: Vec<f64> = samples.iter().filter_map(|m| m.area_ratio).collect();
    if ratios.len() == n {
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0, f64::max);
        if hi - lo <= tol * hi {
            let forms: BTreeSet<ConstantForm> = ratios.iter().map(|x| recognize_constant(*x, mode).form).collect();
            if forms.len() == 1 {
                let form = *forms.iter().next().unwrap();
                let rc = recognize_constant(ratios[0], mode);
                match form {
                    ConstantForm::Rational { p: 1, q: 1 } => out.push((RelationKind::SameArea, None)),
                    ConstantForm::Unrecognized => {}
                    _ => out.push((RelationKind::AreaRatio, Some(rc))),
                }
            }
        }
    }
    let all = |f: fn(&Measurements) -> bool| samples.iter().all(f);
    if all(|m| m.congruent) {
        out.push((RelationKind::Congruent, None));
    }
    if all(|m| m.similar) {
        out.push((RelationKind::Similar, None));
    }
    if all(|m| m.same_perimeter) {
        out.push((RelationKind::SamePerimeter, None));
    }
    if all(|m| m.congruent_circumcircles) {
        out.push((RelationKind::CongruentCircumcircles, None));
    }
    if all(|m| m.same_circumcircle) {
        out.push((RelationKind::SameCircumcircle, None));
    }
    out
}

/// Runs one cell and returns its confirmed findings.
pub fn run_cell(
    shape: ShapeClass,
    radiator: RadiatorKind,
    def: &CenterDef,
    cfg: &SweepConfig,
) -> Result<Vec<RelationFinding>, SkipReason> {
    let seed = cell_seed(cfg.base_seed, shape, radiator, def.index);
    match sample_cell(shape, radiator, def, seed, cfg.samples) {
        CellResult::Skipped(r) => Err(r),
        CellResult::Samples(ms) => Ok(confirm(&ms, cfg.mode, cfg.consistency_tol)
            .into_iter()
            .map(|(relation, rc)| RelationFinding {
                shape,
                radiator,
                center: def.index,
                relation,
                constant: rc.map(|c| ConstantRecord::from_form(c.form, c.value)),
                confirmations: ms.len(),
                suppressed_by: None,
            })
            .collect()),
    }
}

type Cell = (ShapeClass, RadiatorKind, u32);
type CellOutput = (Cell, Result<Vec<RelationFinding>, SkipReason>);

fn run_cells(cells: &[Cell], reg: &CenterRegistry, cfg: &SweepConfig, exec: Exec) -> Vec<CellOutput> {
    let one = |cell: &Cell| {
        let def = reg.get(cell.2).expect("center presence checked before the sweep");
        (*cell, run_cell(cell.0, cell.1, def, cfg))
    };
    match exec {
        Exec::Sequential => cells.iter().map(one).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            cells.par_iter().map(one).collect()
        }
    }
}

/// Marks findings inherited from ancestor shapes, from the arbitrary-point
/// radiator, or duplicated through a radiator coincidence. `pool` holds
/// every finding of the sweep, including auxiliary cells.
pub fn suppress_inherited(findings: &mut [RelationFinding], pool: &[RelationFinding], dag: &AncestryGraph) {
    for f in findings.iter_mut() {
        let closure = dag.closure([f.shape]);
        let arbitrary = pool
            .iter()
            .filter(|g| g.radiator == RadiatorKind::ArbitraryPoint && f.radiator != RadiatorKind::ArbitraryPoint)
            .filter(|g| closure.contains(&g.shape) && g.same_claim(f))
            .map(|g| g.shape)
            .min();
        if let Some(s) = arbitrary {
            f.suppressed_by = Some(format!("{} with arbitrary point", s));
            continue;
        }
        let ancestors = dag.ancestors(f.shape);
        let inherited = pool
            .iter()
            .filter(|g| g.radiator == f.radiator && ancestors.contains(&g.shape) && g.same_claim(f))
            .map(|g| g.shape)
            .min();
        if let Some(s) = inherited {
            f.suppressed_by = Some(format!("ancestor {s}"));
            continue;
        }
        if let Some(c) = coincidence_for(f.radiator, f.shape) {
            f.suppressed_by = Some(format!("{} = {} on {}", c.radiator, c.same_as, c.shape));
        }
    }
}

/// Runs the sweep and returns all findings on the requested cells.
pub fn run_sweep(cfg: &SweepConfig, reg: &CenterRegistry) -> Result<Vec<RelationFinding>, SweepError> {
    Ok(run_sweep_with(cfg, reg, Exec::default())?.findings)
}

/// Runs the sweep with an explicit execution strategy.
pub fn run_sweep_with(cfg: &SweepConfig, reg: &CenterRegistry, exec: Exec) -> Result<SweepOutcome, SweepError> {
    if cfg.samples < 3 {
        return Err(SweepError::TooFewSamples(cfg.samples));
    }
    let missing = reg.missing(cfg.centers.iter().copied());
    if !missing.is_empty() {
        return Err(SweepError::MissingCenters(missing));
    }
    let dag = AncestryGraph::bundled();
    let requested_shapes: BTreeSet<ShapeClass> = cfg.shapes.iter().copied().collect();
    let requested_radiators: BTreeSet<RadiatorKind> = cfg.radiators.iter().copied().collect();
    let centers: BTreeSet<u32> = cfg.centers.iter().copied().collect();
    let all_shapes = dag.closure(requested_shapes.iter().copied());
    let mut all_radiators = requested_radiators.clone();
    all_radiators.insert(RadiatorKind::ArbitraryPoint);

    let mut cells: Vec<Cell> = Vec::new();
    for s in &all_shapes {
        for r in &all_radiators {
            if !applies_to(*r, *s) {
                continue;
            }
            for c in &centers {
                cells.push((*s, *r, *c));
            }
        }
    }
    let results = run_cells(&cells, reg, cfg, exec);

    let mut outcome = SweepOutcome::default();
    let mut pool = Vec::new();
    for ((shape, radiator, center), res) in results {
        match res {
            Ok(fs) => pool.extend(fs),
            Err(reason) => {
                if requested_shapes.contains(&shape) && requested_radiators.contains(&radiator) {
                    outcome.skipped.push(SkippedCell { shape, radiator, center, reason });
                }
            }
        }
    }
    for s in &requested_shapes {
        for r in &requested_radiators {
            if !applies_to(*r, *s) {
                for c in &centers {
                    outcome.skipped.push(SkippedCell { shape: *s, radiator: *r, center: *c, reason: SkipReason::NotApplicable });
                }
            }
        }
    }
    let (mut requested, auxiliary): (Vec<_>, Vec<_>) = pool
        .iter()
        .cloned()
        .partition(|f| requested_shapes.contains(&f.shape) && requested_radiators.contains(&f.radiator));
    suppress_inherited(&mut requested, &pool, dag);
    requested.sort_by(|a, b| a.key().partial_cmp(&b.key()).unwrap());
    let mut auxiliary = auxiliary;
    auxiliary.sort_by(|a, b| a.key().partial_cmp(&b.key()).unwrap());
    outcome.findings = requested;
    outcome.auxiliary = auxiliary;
    outcome.skipped.sort();
    Ok(outcome)
}

/// Unsuppressed findings grouped as `(shape, relation, constant) -> centers`.
pub fn group_findings(findings: &[RelationFinding]) -> BTreeMap<(ShapeClass, RelationKind, ConstantForm), BTreeSet<u32>> {
    let mut m: BTreeMap<_, BTreeSet<u32>> = BTreeMap::new();
    for f in findings.iter().filter(|f| f.suppressed_by.is_none()) {
        m.entry((f.shape, f.relation, f.constant_form())).or_default().insert(f.center);
    }
    m
}

/// Result of re-checking one claimed finding.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimCheck {
    pub claim: RelationFinding,
    pub confirmed: bool,
    pub detail: String,
}

/// Re-runs each claimed cell with a fresh seed and checks the claim.
pub fn verify_claims(claims: &[RelationFinding], reg: &CenterRegistry, cfg: &SweepConfig) -> Vec<ClaimCheck> {
    claims
        .iter()
        .map(|claim| {
            let Some(def) = reg.get(claim.center) else {
                return ClaimCheck { claim: claim.clone(), confirmed: false, detail: "center not in registry".into() };
            };
            match run_cell(claim.shape, claim.radiator, def, cfg) {
                Ok(found) => {
                    let confirmed = found.iter().any(|f| f.same_claim(claim));
                    let detail = if confirmed { "confirmed".into() } else { "relation not observed".into() };
                    ClaimCheck { claim: claim.clone(), confirmed, detail }
                }
                Err(reason) => ClaimCheck { claim: claim.clone(), confirmed: false, detail: format!("cell skipped: {reason:?}") },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_seeds_differ_by_every_coordinate() {
        let base = cell_seed(1, ShapeClass::Kite, RadiatorKind::DiagonalPoint, 2);
        assert_ne!(base, cell_seed(2, ShapeClass::Kite, RadiatorKind::DiagonalPoint, 2));
        assert_ne!(base, cell_seed(1, ShapeClass::Rhombus, RadiatorKind::DiagonalPoint, 2));
        assert_ne!(base, cell_seed(1, ShapeClass::Kite, RadiatorKind::SteinerPoint, 2));
        assert_ne!(base, cell_seed(1, ShapeClass::Kite, RadiatorKind::DiagonalPoint, 3));
        assert_eq!(base, cell_seed(1, ShapeClass::Kite, RadiatorKind::DiagonalPoint, 2));
    }

    #[test]
    fn config_guards() {
        let reg = CenterRegistry::bundled();
        let cfg = SweepConfig::new(vec![ShapeClass::General], vec![RadiatorKind::DiagonalPoint], vec![2]).with_samples(2);
        assert_eq!(run_sweep(&cfg, &reg), Err(SweepError::TooFewSamples(2)));
        let cfg = SweepConfig::new(vec![ShapeClass::General], vec![RadiatorKind::DiagonalPoint], vec![2, 99999]);
        assert_eq!(run_sweep(&cfg, &reg), Err(SweepError::MissingCenters(vec![99999])));
    }

    #[test]
    fn general_arbitrary_centroid() {
        let reg = CenterRegistry::bundled();
        let cfg = SweepConfig::new(vec![ShapeClass::General], vec![RadiatorKind::ArbitraryPoint], vec![2]);
        let fs = run_sweep(&cfg, &reg).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].relation, RelationKind::AreaRatio);
        assert_eq!(fs[0].constant_form(), ConstantForm::Rational { p: 9, q: 2 });
        assert_eq!(fs[0].confirmations, DEFAULT_SAMPLES);
    }
}
