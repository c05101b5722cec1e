use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ppverify_bench::thm1_fixture;
use ppverify_core::pp_test::{char_sum, is_permutation_exhaustive, pp_verdict_charsum};
use ppverify_core::{build_g_thm1, CharSumMode, FieldCtx, FieldElem};

fn field_mul(c: &mut Criterion) {
    let ctx = FieldCtx::new(18, None).unwrap();
    let (a, b) = (FieldElem::from_bits(0x2_b7c1), FieldElem::from_bits(0x1_0f3d));
    c.bench_function("mul F_2^18", |bench| {
        bench.iter(|| ctx.mul(black_box(a), black_box(b)))
    });
    c.bench_function("inv F_2^18", |bench| bench.iter(|| ctx.inv(black_box(a))));
}

fn build_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("build g-thm1 table");
    group.sample_size(10);
    for k in [1, 2, 3] {
        let ctx = FieldCtx::tower(2, k, None).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &ctx, |bench, ctx| {
            bench.iter(|| build_g_thm1(ctx).unwrap())
        });
    }
    group.finish();
}

fn permutation_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("pp checks");
    group.sample_size(10);
    for k in [2, 3] {
        let (_, g) = thm1_fixture(k);
        group.bench_with_input(BenchmarkId::new("exhaustive", k), &g, |bench, g| {
            bench.iter(|| is_permutation_exhaustive(g))
        });
        group.bench_with_input(BenchmarkId::new("single char sum", k), &g, |bench, g| {
            bench.iter(|| char_sum(g, FieldElem::from_bits(0x1d)))
        });
    }
    let (_, g12) = thm1_fixture(2);
    group.bench_function("all-a char sums m=12", |bench| {
        bench.iter(|| pp_verdict_charsum(&g12, CharSumMode::All { override_gate: false }).unwrap())
    });
    group.finish();
}

criterion_group!(benches, field_mul, build_tables, permutation_checks);
criterion_main!(benches);
