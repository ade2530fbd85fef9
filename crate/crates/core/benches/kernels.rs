//! One worker versus the whole pool on the three parallel kernels.

use std::hint::black_box;

use cdyn_core::green::{EscapeConfig, HenonGreen};
use cdyn_core::par;
use cdyn_core::periodic::{periodic_points_1d, periodic_points_henon, AberthConfig, NewtonConfig};
use cdyn_core::probes::{FieldGrid, HenonField, HenonKind, SliceSpec};
use cdyn_core::{Complex64, HenonMap, Point2, Poly};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn henon() -> HenonMap {
    HenonMap::single(Poly::monomial(2), Complex64::new(0.5, 0.0)).unwrap()
}

/// A single worker and a full pool (at least four workers, so the
/// comparison exists on small machines too). Build with
/// `--no-default-features` to time the sequential fallback instead.
fn worker_counts() -> Vec<usize> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    vec![1, all.max(4)]
}

fn green_grid(c: &mut Criterion) {
    let field = HenonField {
        green: HenonGreen::new(henon()),
        kind: HenonKind::Max,
        cfg: EscapeConfig::default(),
    };
    let slice = SliceSpec::real_square(Point2::ORIGIN, 2.0, 128);
    let mut group = c.benchmark_group("green_grid_128");
    group.sample_size(10);
    for threads in worker_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(FieldGrid::sample(&field, &slice).unwrap())))
        });
    }
    group.finish();
}

fn henon_newton(c: &mut Criterion) {
    let f = henon();
    let r = f.filtration_radius();
    let cfg = NewtonConfig::default();
    let mut group = c.benchmark_group("henon_period_4");
    group.sample_size(10);
    for threads in worker_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(periodic_points_henon(&f, 4, r, &cfg).unwrap())))
        });
    }
    group.finish();
}

fn aberth(c: &mut Criterion) {
    let z2 = Poly::monomial(2);
    let cfg = AberthConfig::default();
    let mut group = c.benchmark_group("aberth_z2_period_10");
    group.sample_size(10);
    for threads in worker_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(periodic_points_1d(&z2, 10, &cfg).unwrap())))
        });
    }
    group.finish();
}

criterion_group!(kernels, green_grid, henon_newton, aberth);
criterion_main!(kernels);
