use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graftwood::structures::generate_closure_with;
use graftwood::suites::{identity_check, indexing_check, tuples};
use graftwood::{Algebra, FamilySelector, GraftOp, IdentityName, PlaneTree, Strategy};

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn indexings(c: &mut Criterion) {
    let shapes = PlaneTree::all(7);
    let mut group = c.benchmark_group("indexing oracle, 7 vertices");
    group.sample_size(10);
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(indexing_check(FamilySelector::T, &shapes, s)))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let triples = tuples(Algebra::B, 3, 5, false);
    let mut group = c.benchmark_group("bigraft axiom, triples of degree 5");
    group.sample_size(10);
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(identity_check(IdentityName::E1b, &triples, s)))
        });
    }
    group.finish();
}

fn closures(c: &mut Criterion) {
    let ops: BTreeSet<GraftOp> = [GraftOp::Concat, GraftOp::Lgraft, GraftOp::Rgraft].into_iter().collect();
    let mut group = c.benchmark_group("closure, degree 5");
    group.sample_size(10);
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(generate_closure_with(&ops, 5, s)))
        });
    }
    group.finish();
}

criterion_group!(benches, indexings, axioms, closures);
criterion_main!(benches);
