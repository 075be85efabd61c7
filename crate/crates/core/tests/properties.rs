//! Property suites: barycentric evaluation against Cartesian constructions,
//! center homogeneity and bisymmetry, invariance of the relation measures
//! under similarities, constant recognition, and sweep soundness.

mod common;

use cq_core::barycentric::{bary_to_cartesian, RefTriangle};
use cq_core::centerdefs::{eval_center, CenterRegistry};
use cq_core::explorer::{emit_report, run_sweep_with, sample_instance, Exec, ReportFormat, SkipReason, SweepConfig};
use cq_core::geomcore::Point;
use cq_core::quadgen::{generate, QuadInstance, ShapeClass};
use cq_core::radiators::RadiatorKind;
use cq_core::relations::{
    central_quadrilateral, measure, recognize_constant, similarity_scale, CentralError, ConstantForm, RecognitionMode,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn registry() -> &'static CenterRegistry {
    static REG: OnceLock<CenterRegistry> = OnceLock::new();
    REG.get_or_init(CenterRegistry::bundled)
}

fn point() -> impl Strategy<Value = Point> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(x, y)| Point::new(x, y))
}

/// A triangle with every angle at least 15 degrees.
fn triangle() -> impl Strategy<Value = [Point; 3]> {
    (point(), point(), point()).prop_map(|(a, b, c)| [a, b, c]).prop_filter("angles at least 15 degrees", |v| {
        (0..3).all(|i| {
            let (x, y, z) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
            let (u, w) = (y.sub(x), z.sub(x));
            let cos = u.dot(w) / (u.norm() * w.norm());
            cos.is_finite() && cos.clamp(-1.0, 1.0).acos() > 15f64.to_radians()
        })
    })
}

/// Applies `p -> s * R(theta) p + t`.
fn similar(p: Point, s: f64, theta: f64, t: Point) -> Point {
    p.rotate(theta).scale(s).add(t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn barycentric_matches_cartesian(tri in triangle(), k in 0usize..common::ORACLE_CENTERS.len()) {
        let index = common::ORACLE_CENTERS[k];
        let def = registry().get(index).expect("oracle center bundled");
        let [a, b, c] = tri;
        let t = RefTriangle::new(a, b, c);
        let got = bary_to_cartesian(&t, eval_center(def, t.a, t.b, t.c).unwrap());
        let want = common::cartesian_center(index, a, b, c);
        let diam = t.a.max(t.b).max(t.c);
        prop_assert!(got.dist(want) <= 1e-9 * diam, "X({index}) off by {}", got.dist(want));
    }

    #[test]
    fn centers_homogeneous_and_bisymmetric(tri in triangle(), scale in 0.05f64..20.0) {
        let t = RefTriangle::new(tri[0], tri[1], tri[2]);
        for i in registry().indices() {
            let def = registry().get(i).unwrap();
            let base = eval_center(def, t.a, t.b, t.c);
            let scaled = eval_center(def, scale * t.a, scale * t.b, scale * t.c);
            let swapped = eval_center(def, t.a, t.c, t.b);
            match (base, scaled, swapped) {
                (Ok(p), Ok(q), Ok(s)) => {
                    let tol = 1e-9 * p.l1().max(1.0);
                    prop_assert!((p.u - q.u).abs() < tol && (p.v - q.v).abs() < tol && (p.w - q.w).abs() < tol, "X({i}) not homogeneous");
                    prop_assert!((p.u - s.u).abs() < tol && (p.v - s.w).abs() < tol && (p.w - s.v).abs() < tol, "X({i}) not bisymmetric");
                }
                (x, y, z) => prop_assert!(x.is_err() && x.err() == y.err() && y.err() == z.err(), "X({i}) inconsistent errors"),
            }
        }
    }

    #[test]
    fn measures_invariant_under_similarity(
        seed in 0u64..500,
        center in prop::sample::select(vec![2u32, 3, 4, 5, 20, 402]),
        s in 0.2f64..5.0,
        theta in 0.0f64..std::f64::consts::TAU,
        t in point(),
    ) {
        let def = registry().get(center).unwrap();
        let (q, e) = sample_instance(ShapeClass::Orthodiagonal, RadiatorKind::DiagonalPoint, seed).unwrap();
        let q2 = QuadInstance::new(q.shape, q.vertices.map(|v| similar(v, s, theta, t)), q.seed);
        let e2 = similar(e, s, theta, t);
        let (Ok(c1), Ok(c2)) = (central_quadrilateral(&q, e, def), central_quadrilateral(&q2, e2, def)) else {
            return Ok(());
        };
        let (m1, m2) = (measure(&q, &c1), measure(&q2, &c2));
        match (m1.area_ratio, m2.area_ratio) {
            (Some(r1), Some(r2)) => prop_assert!((r1 - r2).abs() <= 1e-9 * r1.abs()),
            (x, y) => prop_assert_eq!(x.is_some(), y.is_some()),
        }
        prop_assert_eq!(m1.similar, m2.similar);
        prop_assert_eq!(m1.same_perimeter, m2.same_perimeter);
        // The image of a non-degenerate FGHI is FGHI mapped, at scale s.
        if m1.area_ratio.is_some() {
            let k = similarity_scale(&c1.points, &c2.points).expect("similar by construction");
            prop_assert!((k - s).abs() <= 1e-8 * s);
        }
    }

    #[test]
    fn small_rationals_recognized_exactly(p in -60i64..60, q in 1i64..6) {
        let r = recognize_constant(p as f64 / q as f64, RecognitionMode::Rational);
        let g = gcd(p.abs(), q);
        prop_assert_eq!(r.form, ConstantForm::Rational { p: p / g, q: q / g });
    }

    #[test]
    fn surds_recognized_in_extended_mode(p in -40i64..40, q in 1i64..20, d in prop::sample::select(vec![2i64, 3]), r in 1i64..13) {
        let x = (p as f64 + q as f64 * (d as f64).sqrt()) / r as f64;
        let got = recognize_constant(x, RecognitionMode::Extended);
        prop_assert!(!matches!(got.form, ConstantForm::Unrecognized));
        prop_assert!((got.value - x).abs() <= 1e-9 * x.abs().max(1.0));
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

fn small_config(samples: usize, seed: u64) -> SweepConfig {
    SweepConfig::new(
        vec![ShapeClass::Orthodiagonal, ShapeClass::Rectangle, ShapeClass::Rhombus],
        vec![RadiatorKind::DiagonalPoint, RadiatorKind::PonceletPoint],
        registry().indices().collect(),
    )
    .with_samples(samples)
    .with_seed(seed)
}

#[test]
fn sweep_reports_are_byte_identical() {
    let cfg = small_config(5, 3);
    let render = |exec| {
        let out = run_sweep_with(&cfg, registry(), exec).unwrap();
        emit_report(&out.findings, &cfg.radiators, ReportFormat::Json, true)
    };
    let a = render(Exec::default());
    assert_eq!(a, render(Exec::default()));
    assert_eq!(a, render(Exec::Sequential));
}

#[test]
fn more_samples_never_add_findings() {
    let few = run_sweep_with(&small_config(3, 9), registry(), Exec::default()).unwrap().findings;
    let many = run_sweep_with(&small_config(7, 9), registry(), Exec::default()).unwrap().findings;
    for f in &many {
        assert!(few.iter().any(|g| g.same_claim(f)), "7-sample finding absent at 3 samples: {f:?}");
    }
}

#[test]
fn suppressed_findings_hold_on_their_source() {
    let out = run_sweep_with(&small_config(5, 21), registry(), Exec::default()).unwrap();
    let pool: Vec<_> = out.findings.iter().chain(&out.auxiliary).collect();
    let mut checked = 0;
    for f in out.findings.iter().filter(|f| f.suppressed_by.is_some()) {
        let why = f.suppressed_by.as_deref().unwrap();
        let (shape, radiator) = if let Some(s) = why.strip_suffix(" with arbitrary point") {
            (s.parse::<ShapeClass>().unwrap(), RadiatorKind::ArbitraryPoint)
        } else if let Some(s) = why.strip_prefix("ancestor ") {
            (s.parse::<ShapeClass>().unwrap(), f.radiator)
        } else {
            continue;
        };
        assert!(
            pool.iter().any(|g| g.shape == shape && g.radiator == radiator && g.same_claim(f)),
            "{f:?} suppressed by {why} without a source finding"
        );
        // Fresh instances of the source shape also carry the relation.
        let def = registry().get(f.center).unwrap();
        for seed in 1000..1003 {
            let (q, e) = sample_instance(shape, radiator, seed).unwrap();
            let m = measure(&q, &central_quadrilateral(&q, e, def).unwrap());
            if let Some(k) = f.constant.as_ref() {
                let r = m.area_ratio.unwrap();
                assert!((r - k.value).abs() <= 1e-7 * k.value.abs(), "{f:?} ratio {r} on fresh {shape}");
            }
        }
        checked += 1;
    }
    assert!(checked > 0, "no suppressed findings to check");
}

#[test]
fn skipped_infinite_cells_are_infinite_on_fresh_instances() {
    let out = run_sweep_with(&small_config(5, 4), registry(), Exec::default()).unwrap();
    let infinite: Vec<_> = out.skipped.iter().filter(|s| s.reason == SkipReason::AtInfinity).collect();
    assert!(!infinite.is_empty());
    for cell in infinite {
        let def = registry().get(cell.center).unwrap();
        let (q, e) = sample_instance(cell.shape, cell.radiator, 77).unwrap();
        assert_eq!(central_quadrilateral(&q, e, def).unwrap_err(), CentralError::SkippedInfinity, "{cell:?}");
    }
}

#[test]
fn generated_shapes_are_deterministic() {
    for shape in ShapeClass::ALL.iter().copied() {
        assert_eq!(generate(shape, 5).unwrap(), generate(shape, 5).unwrap());
    }
}
