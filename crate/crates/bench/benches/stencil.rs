use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nonconv_bench::{bump, setup, stencil};
use nonconv_core::solver::{step, SolverState};
use nonconv_core::stencil::assemble_row;
use nonconv_core::HorizonDescriptor;

fn row_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_row");
    for zeta in [0.001, 0.1, 1.0, 6.0] {
        let (grid, kernel, horizon) = setup(HorizonDescriptor::Constant(zeta));
        let j = grid.locate(10.0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(zeta), &j, |b, &j| {
            b.iter(|| assemble_row(&grid, &kernel, &horizon, black_box(j)).unwrap())
        });
    }
    group.finish();
}

fn forward_euler_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for (name, horizon) in [
        ("local", HorizonDescriptor::Zero),
        ("erfc", HorizonDescriptor::Erfc { alpha: 0.0 }),
        ("ramp3", HorizonDescriptor::Ramp { slope: 3.0 }),
    ] {
        let s = stencil(horizon);
        let u0 = bump(&s);
        group.bench_function(name, |b| {
            let mut scratch = Vec::new();
            b.iter_batched_ref(
                || SolverState::new(u0.clone()),
                |state| step(state, &s, 0.00625, &mut scratch).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, row_assembly, forward_euler_step);
criterion_main!(benches);
