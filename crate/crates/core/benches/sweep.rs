//! Benchmark grid throughput, sequential against rayon.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use msim::bench::{run_bench_with, BenchConfig, DatasetKind, Exec};
use msim::crossarray::{DupCheck, StrategyConfig};

fn grid(width: u32, n: usize) -> BenchConfig {
    BenchConfig {
        datasets: vec![DatasetKind::Random, DatasetKind::Normal],
        widths: vec![width],
        sizes: vec![n],
        strategies: vec![StrategyConfig::basic(2), StrategyConfig::bts(), StrategyConfig::ml(2, 2, DupCheck::Actual)],
        ks: vec![1, 4],
        repetitions: 8,
        seed: 1,
        ..BenchConfig::default()
    }
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid");
    group.sample_size(10);
    for (width, n) in [(8u32, 256usize), (32, 256)] {
        let cfg = grid(width, n);
        let mut execs = vec![("sequential", Exec::Sequential)];
        if cfg!(feature = "parallel") {
            execs.push(("parallel", Exec::Parallel));
        }
        for (name, exec) in execs {
            group.bench_with_input(BenchmarkId::new(name, format!("W{width}-N{n}")), &cfg, |b, cfg| {
                b.iter(|| black_box(run_bench_with(cfg, exec).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
