use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mahler::classify::{classify_structural, compile_minimal, StructuralConfig};
use mahler::engine::expand;
use mahler_bench::spec;

fn expansion(c: &mut Criterion) {
    let mut g = c.benchmark_group("expand");
    for name in ["thue_morse", "prod_inv_cyclo", "geometric"] {
        let s = spec(name);
        g.bench_with_input(BenchmarkId::new(name, 1 << 14), &s, |b, s| b.iter(|| expand(s, 1 << 14).unwrap()));
    }
    g.finish();
}

fn compile(c: &mut Criterion) {
    let mut g = c.benchmark_group("compile_minimal");
    for name in ["digit_sum", "stern", "denominator_trap"] {
        let s = spec(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| compile_minimal(s, 2048).unwrap()));
    }
    g.finish();
}

fn structural(c: &mut Criterion) {
    let cfg = StructuralConfig::default();
    let mut g = c.benchmark_group("classify_structural");
    g.sample_size(10);
    for name in ["geometric", "prod_inv_cyclo", "thin_geometric", "digit_sum"] {
        let s = spec(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| classify_structural(s, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, expansion, compile, structural);
criterion_main!(benches);
