use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use netfair_core::synth::{biased_decision, random_attributed_graph, RateTarget, SynthConfig};
use netfair_core::{
    perceive_all, visibility_sweep, AttributedNetwork, DecisionVector, DegenerateRule,
    ExpectationPolicy, GroupPartition, NodeId,
};

/// Roughly the size and density of a conference review network: about
/// 2200 nodes with mean degree near 30.
fn review_sized() -> (AttributedNetwork, DecisionVector) {
    let config = SynthConfig {
        group_sizes: vec![270, 1940],
        intra_probability: 0.014,
        inter_probability: 0.014,
        outcome_rate: 0.3,
        rates: vec![
            RateTarget {
                tpr: 0.9,
                fpr: 0.08,
            },
            RateTarget {
                tpr: 0.8,
                fpr: 0.06,
            },
        ],
        connect: true,
        seed: 7,
        ..SynthConfig::default()
    };
    let net = random_attributed_graph(&config).expect("valid config");
    let h = biased_decision(&net, &config).expect("attainable targets");
    (net, h)
}

fn neighborhoods(c: &mut Criterion) {
    let (net, _) = review_sized();
    let mut group = c.benchmark_group("neighborhood");
    for delta in [1, 2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(delta), &delta, |b, &d| {
            b.iter(|| net.neighborhood(black_box(NodeId(0)), d).unwrap().len())
        });
    }
    group.finish();
}

fn perception(c: &mut Criterion) {
    let (net, h) = review_sized();
    let mut group = c.benchmark_group("perceive_all");
    group.sample_size(20);
    for delta in [1, 2] {
        let policy = ExpectationPolicy::new(delta, DegenerateRule::ZeroExpectation);
        group.bench_with_input(BenchmarkId::from_parameter(delta), &policy, |b, p| {
            b.iter(|| perceive_all(&net, &h, p).unwrap().totals)
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let (net, h) = review_sized();
    let partition = GroupPartition::from_network(&net);
    let saturation = net.eccentricity_bound().max(1);
    let mut group = c.benchmark_group("visibility_sweep");
    group.sample_size(10);
    group.bench_function("saturation", |b| {
        b.iter(|| {
            visibility_sweep(
                &net,
                &h,
                &partition,
                saturation,
                DegenerateRule::ZeroExpectation,
            )
            .unwrap()
            .rows
            .len()
        })
    });
    group.finish();
}

criterion_group!(benches, neighborhoods, perception, sweep);
criterion_main!(benches);
