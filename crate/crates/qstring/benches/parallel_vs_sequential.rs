use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qstring::bench::{run_suite, BenchConfig, Suite};
use qstring::bwt_index::BwtIndex;
use qstring::corpus::{self, DNA};
use qstring::par::{map_with, Execution};

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(10));
    for suite in [Suite::Lz, Suite::Ed] {
        for (name, execution) in MODES {
            let cfg = BenchConfig {
                suite,
                sizes: (9..=12).map(|e| 1 << e).collect(),
                execution,
                ..BenchConfig::default()
            };
            group.bench_function(BenchmarkId::new(format!("{suite:?}"), name), |b| {
                b.iter(|| run_suite(&cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn locate(c: &mut Criterion) {
    let mut rng = corpus::rng(9);
    let text = corpus::planted_z(&mut rng, 1 << 14, 32, &DNA);
    let index = BwtIndex::new(&text).unwrap();
    let patterns: Vec<Vec<u32>> = (0..256)
        .map(|i| text[i * 50..i * 50 + 8].to_vec())
        .collect();
    let mut group = c.benchmark_group("locate");
    group.sample_size(20);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_with(execution, patterns.clone(), |p| {
                    index.locate(&p).unwrap().len()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, suites, locate);
criterion_main!(benches);
