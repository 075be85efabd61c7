//! Command-line front end for the central quadrilateral explorer.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cq_core::centerdefs::{classify_isosceles_behavior, classify_right_triangle_ratio, CenterRegistry, CLASSIFY_SAMPLES};
use cq_core::explorer::{
    emit_report, run_sweep_with, square::square_ratio, square::SquareOutcome, verify_claims, Exec, RelationFinding,
    ReportFormat, SweepConfig, DEFAULT_SAMPLES,
};
use cq_core::quadgen::ShapeClass;
use cq_core::radiators::RadiatorKind;
use cq_core::regression::{bundled_manifest, load_manifest, run_all, CaseStatus, DEFAULT_SEEDS};
use cq_core::relations::{recognize_constant, RecognitionMode};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "cqexplore", about = "Search for relations between quadrilaterals and their central quadrilaterals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rational,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Right,
    Isosceles,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep shapes, radiators and centers.
    Sweep {
        /// Comma-separated shape names, or "all".
        #[arg(long, default_value = "all")]
        shapes: String,
        /// Comma-separated radiator names, or "all".
        #[arg(long, default_value = "all")]
        radiators: String,
        /// Center indices such as "1-20,402,620", or "all".
        #[arg(long, default_value = "all")]
        centers: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "rational")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        include_suppressed: bool,
        /// Run cells one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Area ratios for a square with radiator at its center.
    SquareTable {
        #[arg(long, default_value = "all")]
        centers: String,
    },
    /// Behaviour of centers on right or isosceles triangles.
    Classify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value = "all")]
        centers: String,
    },
    /// Re-check claimed findings from a JSON file.
    Verify {
        #[arg(long)]
        claims: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "extended")]
        mode: Mode,
    },
    /// Run the theorem regression manifest.
    Regress {
        /// Manifest path; the bundled manifest when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Print passing cases too.
        #[arg(long)]
        verbose: bool,
    },
}

fn parse_list<T>(s: &str, all: &[T]) -> Result<Vec<T>>
where
    T: std::str::FromStr + Clone,
    T::Err: std::fmt::Display,
{
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(all.to_vec());
    }
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse::<T>().map_err(|e| anyhow::anyhow!("{e}")))
        .collect()
}

fn parse_centers(s: &str, reg: &CenterRegistry) -> Result<Vec<u32>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(reg.indices().collect());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
                if a > b {
                    bail!("empty range {part}");
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().with_context(|| format!("bad center '{part}'"))?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn mode(m: Mode) -> RecognitionMode {
    match m {
        Mode::Rational => RecognitionMode::Rational,
        Mode::Extended => RecognitionMode::Extended,
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let reg = CenterRegistry::load().context("loading center registry")?;
    match cli.command {
        Command::Sweep { shapes, radiators, centers, samples, seed, mode: m, format, include_suppressed, sequential } => {
            let shapes = parse_list(&shapes, ShapeClass::ALL)?;
            let radiators = parse_list(&radiators, RadiatorKind::ALL)?;
            let centers = parse_centers(&centers, &reg)?;
            let cfg = SweepConfig::new(shapes, radiators.clone(), centers).with_samples(samples).with_seed(seed).with_mode(mode(m));
            let exec = if sequential { Exec::Sequential } else { Exec::default() };
            let outcome = run_sweep_with(&cfg, &reg, exec)?;
            let format = match format {
                Format::Md => ReportFormat::Md,
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
            print!("{}", emit_report(&outcome.findings, &radiators, format, include_suppressed));
        }
        Command::SquareTable { centers } => {
            println!("| Center | [ABCD]/[FGHI] |\n|---|---|");
            for i in parse_centers(&centers, &reg)? {
                let Some(def) = reg.get(i) else {
                    eprintln!("X({i}) not in registry");
                    continue;
                };
                if let SquareOutcome::Ratio(r) | SquareOutcome::Limit(r) = square_ratio(def) {
                    println!("| X({i}) | {r} |");
                }
            }
        }
        Command::Classify { kind, centers } => {
            for i in parse_centers(&centers, &reg)? {
                let Some(def) = reg.get(i) else {
                    eprintln!("X({i}) not in registry");
                    continue;
                };
                match kind {
                    Kind::Isosceles => println!("X({i}): {:?}", classify_isosceles_behavior(def, CLASSIFY_SAMPLES)),
                    Kind::Right => {
                        let b = classify_right_triangle_ratio(def, CLASSIFY_SAMPLES);
                        match b {
                            cq_core::centerdefs::RightTriangleBehavior::OnMedian(x) => {
                                println!("X({i}): OnMedian {}", recognize_constant(x, RecognitionMode::Extended))
                            }
                            other => println!("X({i}): {other:?}"),
                        }
                    }
                }
            }
        }
        Command::Verify { claims, samples, seed, mode: m } => {
            let text = std::fs::read_to_string(&claims).with_context(|| format!("reading {}", claims.display()))?;
            let claims: Vec<RelationFinding> = serde_json::from_str(&text).context("parsing claims")?;
            let cfg = SweepConfig::new(vec![], vec![], vec![]).with_samples(samples).with_seed(seed).with_mode(mode(m));
            let checks = verify_claims(&claims, &reg, &cfg);
            let mut failed = 0;
            for c in &checks {
                let tag = if c.confirmed { "PASS" } else { "FAIL" };
                failed += usize::from(!c.confirmed);
                println!("{tag} {} {} X({}) {}: {}", c.claim.shape, c.claim.radiator, c.claim.center, c.claim.relation, c.detail);
            }
            if failed > 0 {
                bail!("{failed} of {} claims not confirmed", checks.len());
            }
        }
        Command::Regress { manifest, verbose } => {
            let cases = match manifest {
                Some(p) => load_manifest(&p).with_context(|| format!("loading {}", p.display()))?,
                None => bundled_manifest(),
            };
            let reports = run_all(&cases, &reg, &DEFAULT_SEEDS);
            let (mut pass, mut missing, mut bad) = (0, 0, 0);
            for r in &reports {
                let line = match &r.status {
                    CaseStatus::Pass => {
                        pass += 1;
                        format!("PASS {} ({:.1e})", r.id, r.worst_residual)
                    }
                    CaseStatus::Missing(i) => {
                        missing += 1;
                        format!("SKIP {}: X({i}) not in registry", r.id)
                    }
                    CaseStatus::Fail(why) => {
                        bad += 1;
                        format!("FAIL {}: {why}", r.id)
                    }
                    CaseStatus::Error(why) => {
                        bad += 1;
                        format!("ERROR {}: {why}", r.id)
                    }
                };
                if verbose || matches!(r.status, CaseStatus::Fail(_) | CaseStatus::Error(_)) {
                    println!("{line}");
                }
            }
            println!("{pass} pass, {bad} fail, {missing} skipped for missing centers, of {}", reports.len());
            if bad > 0 {
                bail!("{bad} cases did not pass");
            }
        }
    }
    Ok(())
}
