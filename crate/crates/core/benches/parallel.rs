//! Sequential against data-parallel execution of the sampling workloads.
//! Without the `parallel` feature both variants run on one thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use discroot::census::{monte_carlo_counts, quartic_census_sample, CensusConfig, HeightMode, QUARTIC_SCALES};
use discroot::exec::Exec;
use discroot::real::{classification_suite, SuiteConfig};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn census_monte_carlo(c: &mut Criterion) {
    let samples = 1 << 20;
    let mut group = c.benchmark_group("census_monte_carlo");
    group.throughput(Throughput::Elements(samples));
    group.sample_size(20);
    for (name, exec) in EXECS {
        let cfg = CensusConfig::new(HeightMode::NaiveHeight, 10.0, samples, 7).unwrap().with_exec(exec);
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| monte_carlo_counts(cfg)));
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classification_suite");
    group.throughput(Throughput::Elements(1000));
    group.sample_size(20);
    for (name, exec) in EXECS {
        let cfg = SuiteConfig { samples: 1000, exec, ..SuiteConfig::default() };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| b.iter(|| classification_suite(cfg)));
    }
    group.finish();
}

fn quartic_census(c: &mut Criterion) {
    let samples = 20_000;
    let mut group = c.benchmark_group("quartic_census");
    group.throughput(Throughput::Elements(samples));
    group.sample_size(20);
    for (name, exec) in EXECS {
        let cfg = CensusConfig::new(HeightMode::NaiveHeight, 1000.0, samples, 1).unwrap().with_exec(exec);
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| quartic_census_sample(cfg, &QUARTIC_SCALES))
        });
    }
    group.finish();
}

criterion_group!(benches, census_monte_carlo, classification, quartic_census);
criterion_main!(benches);
