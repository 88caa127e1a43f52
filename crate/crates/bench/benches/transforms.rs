use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eigenconv::convolution::{discrete_convolve, periodic_convolve_discrete};
use eigenconv::fourier::{dft, fourier_coefficients, fourier_transform, idft};
use eigenconv::harness::{run_all, GridParams, DEFAULT_SEED};
use eigenconv::{Complex64, DiscreteSignal, Grid, PeriodicDiscreteSignal, PeriodicSampledSignal, SampledSignal};

/// Deterministic non-trivial samples.
fn samples(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0 / (1.0 + k as f64), 0.7 * k as f64)).collect()
}

fn bench_dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft");
    for n in [16, 64, 256] {
        let f = PeriodicDiscreteSignal::new(samples(n)).unwrap();
        let spectrum = dft(&f);
        group.bench_with_input(BenchmarkId::new("forward", n), &f, |b, f| b.iter(|| dft(black_box(f))));
        group.bench_with_input(BenchmarkId::new("inverse", n), &spectrum, |b, s| b.iter(|| idft(black_box(s))));
    }
    group.finish();
}

fn bench_convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution");
    for n in [16, 128] {
        let f = DiscreteSignal::new(-3, samples(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("discrete", n), &f, |b, f| {
            b.iter(|| discrete_convolve(black_box(f), black_box(f)))
        });
        let p = PeriodicDiscreteSignal::new(samples(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("periodic", n), &p, |b, p| {
            b.iter(|| periodic_convolve_discrete(black_box(p), black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn bench_spectra(c: &mut Criterion) {
    let f = PeriodicSampledSignal::new(1.0 / 64.0, samples(64)).unwrap();
    c.bench_function("series/n64_nmax8", |b| b.iter(|| fourier_coefficients(black_box(&f), 8).unwrap()));

    let pulse = SampledSignal::new(1.0 / 512.0, -256, vec![Complex64::from(1.0); 512]).unwrap();
    let omegas = Grid::symmetric(0.25, 64).unwrap();
    c.bench_function("ft/pulse_512x129", |b| b.iter(|| fourier_transform(black_box(&pulse), &omegas).unwrap()));
}

fn bench_harness(c: &mut Criterion) {
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    group.bench_function("run_all/default", |b| b.iter(|| run_all(GridParams::default(), DEFAULT_SEED)));
    group.finish();
}

criterion_group!(benches, bench_dft, bench_convolution, bench_spectra, bench_harness);
criterion_main!(benches);
