use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zetaqva::cartan::StructureConstants;
use zetaqva::qyb::{check_unitarity, check_ybe, SOperator, YbeSample};
use zetaqva::symcomb::check_sym_gps;
use zetaqva::tau::TauTuple;
use zetaqva::{quiver, Suite};
use zetaqva_bench::contexts;

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("construction");
    g.sample_size(10);
    for ctx in contexts() {
        g.bench_with_input(BenchmarkId::new("structure-constants", ctx.name()), &ctx, |b, ctx| {
            b.iter(|| StructureConstants::build(ctx))
        });
        g.bench_with_input(BenchmarkId::new("canonical-tau-N8", ctx.name()), &ctx, |b, ctx| {
            b.iter(|| TauTuple::canonical(ctx, 8))
        });
    }
    g.finish();
}

fn braiding(c: &mut Criterion) {
    let mut g = c.benchmark_group("braiding");
    g.sample_size(10);
    let ctx = &contexts()[0];
    let t = TauTuple::canonical(ctx, 8);
    g.bench_function("unitarity A1 p=7 N=8", |b| {
        b.iter(|| check_unitarity(&SOperator::new(&t)))
    });
    g.bench_function("ybe 50 triples A1 p=7 N=8", |b| {
        b.iter(|| check_ybe(&SOperator::new(&t), 4, YbeSample::Seeded { count: 50, seed: 0 }))
    });
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    for ctx in contexts() {
        g.bench_with_input(BenchmarkId::new(format!("{}-suite", Suite::Dft), ctx.name()), &ctx, |b, ctx| {
            b.iter(|| quiver::check_dft(ctx))
        });
        g.bench_with_input(BenchmarkId::new("arrow-counts", ctx.name()), &ctx, |b, ctx| {
            b.iter(|| quiver::check_arrow_counts(ctx))
        });
    }
    g.bench_function("sym-gps k=5", |b| b.iter(|| check_sym_gps(5, None)));
    g.finish();
}

criterion_group!(benches, construction, braiding, sweeps);
criterion_main!(benches);
