//! Parallel against sequential sweep over the diagonal-point cells.

use cq_core::centerdefs::CenterRegistry;
use cq_core::explorer::{run_sweep_with, Exec, SweepConfig};
use cq_core::quadgen::ShapeClass;
use cq_core::radiators::RadiatorKind;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sweep(c: &mut Criterion) {
    let reg = CenterRegistry::bundled();
    let cfg = SweepConfig::new(
        vec![ShapeClass::Orthodiagonal, ShapeClass::Rectangle],
        vec![RadiatorKind::DiagonalPoint],
        reg.indices().collect(),
    );
    #[allow(unused_mut)]
    let mut execs = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    execs.push(("parallel", Exec::Parallel));

    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, exec) in execs {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_sweep_with(&cfg, &reg, exec).expect("sweep"))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
