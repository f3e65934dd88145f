//! Sequential against rayon for the three parallel workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use twistfree::classify::{enumerate_covers_with, CoverOptions, ManifoldLabel};
use twistfree::intlat::CanonicalInvolution;
use twistfree::realize::{find_witness_with, verify_action_model_with};
use twistfree::twistgrp::{OrientationHom, TwistedGroup};
use twistfree::Parallelism;

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn witness_search(c: &mut Criterion) {
    // No witness exists, so every reduced word up to the bound is visited.
    let group = TwistedGroup::standard(CanonicalInvolution::new(1, 1, 0));
    let phi = OrientationHom::from_bits(&[0, 0, 1]);
    let mut g = c.benchmark_group("find_witness");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 7), &mode, |b, &mode| {
            b.iter(|| find_witness_with(&group, &phi, 7, mode))
        });
    }
    g.finish();
}

fn action_model(c: &mut Criterion) {
    let group = TwistedGroup::standard(CanonicalInvolution::new(1, 0, 1));
    let phi = OrientationHom::from_bits(&[1, 1, 0]);
    let mut g = c.benchmark_group("verify_action_model");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 1000), &mode, |b, &mode| {
            b.iter(|| verify_action_model_with(&group, &phi, 1000, 4, 7, mode).unwrap())
        });
    }
    g.finish();
}

fn covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_covers");
    g.sample_size(10);
    for (name, mode) in MODES {
        let options = CoverOptions {
            parallelism: mode,
            ..Default::default()
        };
        g.bench_with_input(BenchmarkId::new(name, 48), &options, |b, &options| {
            b.iter(|| enumerate_covers_with(ManifoldLabel::S1xS2n, 48, options).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, witness_search, action_model, covers);
criterion_main!(benches);
