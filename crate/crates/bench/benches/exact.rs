use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use satotate_core::classnumber::hurwitz_table;
use satotate_core::modforms::trace_tk_mf;
use satotate_core::traceformula::trace_tk_es;

fn class_numbers(c: &mut Criterion) {
    c.bench_function("hurwitz_table/2000", |b| b.iter(|| hurwitz_table(black_box(2000))));
}

fn traces(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke_trace");
    for (k, q) in [(12u32, 47u64), (30, 47), (30, 49)] {
        let id = format!("k{k}_q{q}");
        group.bench_with_input(BenchmarkId::new("class_numbers", &id), &(k, q), |b, &(k, q)| {
            b.iter(|| trace_tk_es(k, q).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("q_expansion", &id), &(k, q), |b, &(k, q)| {
            b.iter(|| trace_tk_mf(k, q).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, class_numbers, traces);
criterion_main!(benches);
