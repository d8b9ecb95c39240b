use chromcong_core::arith::qbinom;
use chromcong_core::bernoulli::BernoulliCache;
use chromcong_core::groups::{
    gen_tuples_bruteforce, group_by_name, hall_gen_count, tuple_class_sum, AbelianPType,
};
use chromcong_core::moduli::{chi_q, count_residue_tuples, prop61_sum};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_bernoulli_fill(c: &mut Criterion) {
    c.bench_function("bernoulli_table_to_160", |b| {
        b.iter(|| BernoulliCache::new().get(black_box(160)))
    });
}

fn bench_chi_q(c: &mut Criterion) {
    c.bench_function("chi_q_genus_4", |b| b.iter(|| chi_q(black_box(4))));
}

fn bench_prop61(c: &mut Criterion) {
    c.bench_function("prop61_sum_u12_p5", |b| {
        b.iter(|| prop61_sum(black_box(12), black_box(5)))
    });
}

fn bench_tuple_class_sum(c: &mut Criterion) {
    let s4 = group_by_name("S4").unwrap();
    c.bench_function("tuple_class_sum_S4_p2_n2", |b| {
        b.iter(|| tuple_class_sum(black_box(&s4), 2, 2))
    });
}

fn bench_generating_tuples(c: &mut Criterion) {
    let t = AbelianPType::new(3, vec![1, 1, 1]);
    c.bench_function("gen_tuples_bruteforce_27_n2", |b| {
        b.iter(|| gen_tuples_bruteforce(black_box(&t), 2).unwrap())
    });
    c.bench_function("hall_gen_count_27_n2", |b| {
        b.iter(|| hall_gen_count(black_box(&t), 2))
    });
}

fn bench_residue_counting(c: &mut Criterion) {
    c.bench_function("count_residue_tuples_125", |b| {
        b.iter(|| count_residue_tuples(black_box(125), black_box(&[1, 5, 5, 25, 25])))
    });
}

fn bench_qbinom(c: &mut Criterion) {
    c.bench_function("qbinom_8_4_p5", |b| b.iter(|| qbinom(black_box(8), 4, 5)));
}

criterion_group!(
    benches,
    bench_bernoulli_fill,
    bench_chi_q,
    bench_prop61,
    bench_tuple_class_sum,
    bench_generating_tuples,
    bench_residue_counting,
    bench_qbinom
);
criterion_main!(benches);
