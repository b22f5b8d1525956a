use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use entscale::lattice::{build_grid, min_balanced_cut, CutMode};
use entscale::runtime::{eval_runtime, invert_depth, RuntimeParams};
use entscale::simulator::{build_random_circuit, entropy_ebits, schmidt_spectrum};
use entscale_bench::entangled_fixture;

fn layer_application(c: &mut Criterion) {
    let mut group = c.benchmark_group("layer");
    for (rows, cols) in [(3, 4), (4, 4), (4, 5)] {
        let (graph, _, state) = entangled_fixture(rows, cols, 4);
        let circuit = build_random_circuit(&graph, 8, 3).unwrap();
        let layer = &circuit.layers()[5];
        group.bench_with_input(BenchmarkId::from_parameter(graph.n()), &state, |b, s| {
            b.iter_batched_ref(|| s.clone(), |s| s.apply_layer(black_box(layer)), criterion::BatchSize::LargeInput)
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("schmidt");
    group.sample_size(20);
    for (rows, cols) in [(2, 4), (3, 4), (4, 4)] {
        let (graph, cut, state) = entangled_fixture(rows, cols, 12);
        group.bench_function(BenchmarkId::from_parameter(graph.n()), |b| {
            b.iter(|| entropy_ebits(&schmidt_spectrum(black_box(&state), &cut).unwrap()))
        });
    }
    group.finish();
}

fn exact_cut(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_cut_exact");
    group.sample_size(10);
    for (rows, cols) in [(4, 4), (4, 5)] {
        let graph = build_grid(rows, cols).unwrap();
        group.bench_function(BenchmarkId::from_parameter(graph.n()), |b| {
            b.iter(|| min_balanced_cut(black_box(&graph), CutMode::Exact).unwrap())
        });
    }
    group.finish();
}

fn inversion(c: &mut Criterion) {
    let p = RuntimeParams::PAPER;
    let t = eval_runtime(&p, 72, 80.0).unwrap().seconds().unwrap();
    c.bench_function("invert_depth", |b| b.iter(|| invert_depth(&p, black_box(72), black_box(t)).unwrap()));
}

criterion_group!(kernels, layer_application, spectrum, exact_cut, inversion);
criterion_main!(kernels);
