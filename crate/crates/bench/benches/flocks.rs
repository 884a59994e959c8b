use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use valflock::algebraic::{lindstrom_toric, LinearizedParam, ToricRep};
use valflock::flock::{check_flock_axioms, extract_valuation, MatroidFlock};
use valflock::matroid::{named_matroid, NamedMatroid};
use valflock::rigidity::rigidity_certificate;
use valflock::{ExtInt, GroundSet, IntMatrix, IntVec, Valuation};

/// A trivial valuation on the uniform matroid with values spread over `0..=6`.
fn valuation(n: usize, d: usize) -> Valuation {
    let g = Arc::new(GroundSet::numbered(n));
    let alpha = IntVec((0..n as i64).map(|i| i % 3).collect());
    Valuation::from_fn(g, d, |b| ExtInt::Fin(alpha.sum_over(b)))
}

fn extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_valuation");
    for n in [4usize, 5, 6] {
        let nu = valuation(n, 3.min(n - 1));
        group.bench_with_input(BenchmarkId::from_parameter(n), &nu, |b, nu| {
            b.iter(|| {
                let flock = MatroidFlock::from_valuation(nu.clone());
                black_box(extract_valuation(&flock, None).unwrap())
            })
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_flock_axioms");
    group.sample_size(10);
    for n in [3usize, 4, 5] {
        let nu = valuation(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &nu, |b, nu| {
            b.iter(|| {
                let flock = MatroidFlock::from_valuation(nu.clone());
                black_box(check_flock_axioms(&flock, 2, false).unwrap())
            })
        });
    }
    group.finish();
}

fn algebraic(c: &mut Criterion) {
    let a = IntMatrix::from_i64(&[vec![1, 0, 0, 1, 2, 3], vec![0, 1, 0, 4, 1, 2], vec![0, 0, 1, 2, 2, 1]]).unwrap();
    let rep = ToricRep::new(a, 2).unwrap();
    c.bench_function("lindstrom_toric 3x6", |b| b.iter(|| black_box(lindstrom_toric(&rep))));
    c.bench_function("toric flock extraction 3x6", |b| {
        b.iter(|| black_box(extract_valuation(&MatroidFlock::from_toric(rep.clone()), None).unwrap()))
    });
    let x = LinearizedParam::example(2, 2).unwrap();
    c.bench_function("linearized flock extraction", |b| {
        b.iter(|| black_box(extract_valuation(&MatroidFlock::from_linearized(x.clone()), None).unwrap()))
    });
}

fn rigidity(c: &mut Criterion) {
    let fano = named_matroid(NamedMatroid::Fano).unwrap();
    c.bench_function("rigidity fano", |b| b.iter(|| black_box(rigidity_certificate(&fano))));
}

criterion_group!(benches, extraction, axioms, algebraic, rigidity);
criterion_main!(benches);
