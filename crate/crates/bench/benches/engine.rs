use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fourdb_bench::{conjunction_of_disjunctions, layered_database};
use fourdb_core::engine::{EngineConfig, GroundProgram};
use fourdb_core::synth::{synthesize, TruthFunction};
use fourdb_core::{normalize, parse_database, parse_formula, semantics, TruthValue};

fn fixpoint(c: &mut Criterion) {
    let mut group = c.benchmark_group("semantics");
    for width in [8, 32, 128] {
        let db = layered_database(width, 6);
        group.bench_with_input(BenchmarkId::new("layered", width), &db, |b, db| {
            b.iter(|| semantics(black_box(db), 100).unwrap())
        });
    }
    let db = layered_database(64, 6);
    let program = GroundProgram::new(&db, &EngineConfig::default()).unwrap();
    group.bench_function("sigma_step/64", |b| {
        b.iter(|| program.sigma_step(black_box(program.extension())).unwrap())
    });
    group.finish();
}

fn syntax(c: &mut Criterion) {
    let db = layered_database(64, 6);
    let text = db.to_string();
    c.bench_function("parse/layered-64", |b| {
        b.iter(|| parse_database(black_box(&text)).unwrap())
    });
}

fn normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for n in [4, 8, 12] {
        let f = parse_formula(&conjunction_of_disjunctions(n)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| normalize(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let w = TruthFunction::from_fn(3, |v| v[0].kjoin(v[1]).and(v[2].neg().or(TruthValue::None)))
        .unwrap();
    c.bench_function("synthesize/ternary", |b| {
        b.iter(|| synthesize(black_box(&w)))
    });
}

criterion_group!(benches, fixpoint, syntax, normal_form, synthesis);
criterion_main!(benches);
