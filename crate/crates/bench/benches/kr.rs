//! Wall-clock benchmarks for the hot paths: the three polynomial routes,
//! point evaluation, primality, factorization, the clustered scan, and
//! the brute-force ideal counter.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::{BigInt, BigUint};

use krq_core::numtheory::{check_prime, factorize_big};
use krq_core::{kr, limits, oracle, CnRoute, Rational};

fn routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("routes");
    group.bench_function("coefficients_n200", |b| {
        b.iter(|| kr::cn_via_coefficients(black_box(200)).unwrap())
    });
    group.bench_function("divisors_n200", |b| {
        b.iter(|| kr::cn_via_divisors(black_box(200)).unwrap())
    });
    group.bench_function("gf_prefix_n200", |b| {
        b.iter(|| kr::cn_via_gf(black_box(200)).unwrap())
    });
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let q2 = Rational::from_integer(BigInt::from(2));
    let q32 = Rational::new(BigInt::from(3), BigInt::from(2));
    let mut group = c.benchmark_group("evaluation");
    group.bench_function("cn_eval_n500_q2", |b| {
        b.iter(|| kr::cn_eval(black_box(500), &q2, CnRoute::Divisors).unwrap())
    });
    group.bench_function("cn_eval_n500_q3_halves", |b| {
        b.iter(|| kr::cn_eval(black_box(500), &q32, CnRoute::Divisors).unwrap())
    });
    group.bench_function("deviation_n496_q2", |b| {
        b.iter(|| kr::deviation(black_box(496), &q2).unwrap())
    });
    group.finish();
}

fn numtheory(c: &mut Criterion) {
    let m127: BigUint = (BigUint::from(1u8) << 127) - 1u8;
    let semiprime = BigUint::from(0xffff_fffb_u64) * BigUint::from(0xffff_ffc5_u64);
    let mut group = c.benchmark_group("numtheory");
    group.bench_function("check_prime_m127", |b| {
        b.iter(|| check_prime(black_box(&m127)))
    });
    group.bench_function("factorize_64bit_semiprime", |b| {
        b.iter(|| factorize_big(black_box(&semiprime)))
    });
    group.finish();
}

fn scans(c: &mut Criterion) {
    let q2 = Rational::from_integer(BigInt::from(2));
    let mut group = c.benchmark_group("scans");
    group.sample_size(20);
    group.bench_function("scan_phi_n2000", |b| {
        b.iter(|| limits::scan_phi(black_box(2000), &q2, 200).unwrap())
    });
    group.bench_function("criterion_scan_n2000", |b| {
        b.iter(|| limits::criterion_scan(black_box(2000), None).unwrap())
    });
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(20);
    group.bench_function("ideals_n2_q3", |b| {
        b.iter(|| {
            oracle::count_ideals_bruteforce(
                black_box(2),
                black_box(3),
                oracle::DEFAULT_ENUMERATION_BUDGET,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, routes, evaluation, numtheory, scans, brute_force);
criterion_main!(benches);
