//! Compares the data-parallel bulk paths against plain sequential loops.
//!
//! The library routes its sweeps through `par::map_range`, which uses rayon
//! under the default `parallel` feature. Each group benches the public bulk
//! entry point next to an explicitly sequential loop over the per-item API.

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use circlespace::fibration::pushforward;
use circlespace::*;

fn bench_forms_sweep(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<(QVector2, QVector2)> = (0..10_000)
        .map(|_| {
            (
                QVector2::new(rng::quaternion(&mut rng), rng::quaternion(&mut rng)),
                QVector2::new(rng::quaternion(&mut rng), rng::quaternion(&mut rng)),
            )
        })
        .collect();
    let mut group = c.benchmark_group("forms_sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let worst = par::map_collect(&pairs, |(v, w)| eval_forms(*v, *w).omega.norm())
                .into_iter()
                .fold(0.0f64, f64::max);
            black_box(worst)
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let worst = par::map_collect_seq(&pairs, |(v, w)| eval_forms(*v, *w).omega.norm())
                .into_iter()
                .fold(0.0f64, f64::max);
            black_box(worst)
        })
    });
    group.finish();
}

fn bench_validate_fibration(c: &mut Criterion) {
    let h = hopf_curve(&canonical_real_basis());
    let mut group = c.benchmark_group("validate_fibration");
    group.sample_size(20);
    group.bench_function("parallel", |b| {
        // the library entry point fans out over rayon
        b.iter(|| black_box(validate_fibration(&h, 512, 3).passed))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            // same work as a plain loop over the per-point pieces
            let mut pass = true;
            for i in 0..512usize {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    3 ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1)),
                );
                let x = rng::s3_point(&mut rng);
                let poly = incidence_polynomial(&x, &h);
                let roots = poly::roots_cp1(&poly, 1, 1e-10).unwrap();
                pass &= poly::cluster_cp1(&roots, 1e-6).len() == 1;
            }
            black_box(pass)
        })
    });
    group.finish();
}

fn bench_leaf_integration(c: &mut Criterion) {
    let field = surface_distribution(SurfaceSpec::parse("z4").unwrap());
    let starts: Vec<S3Point> = (0..16)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x800 + i as u64);
            rng::s3_point(&mut rng)
        })
        .collect();
    let mut group = c.benchmark_group("leaf_integration");
    group.sample_size(10);
    let max_t = 8.0 * std::f64::consts::PI;
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let leaves = par::map_collect(&starts, |x0| {
                integrate_leaf(&field, x0, 2e-3, max_t).unwrap().closed
            });
            black_box(leaves.iter().all(|&c| c))
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let mut all = true;
            for x0 in &starts {
                all &= integrate_leaf(&field, x0, 2e-3, max_t).unwrap().closed;
            }
            black_box(all)
        })
    });
    group.finish();
}

fn bench_normalize_batch(c: &mut Criterion) {
    let h = hopf_curve(&canonical_real_basis());
    let curves: Vec<FibrationCurve> = (0..64)
        .map(|i| pushforward(&moebius::induced_on_w(&moebius::random_conformal(i)), &h))
        .collect();
    let mut group = c.benchmark_group("normalize_batch");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let worst = par::map_collect(&curves, |c| normalize_curve(c).unwrap().residual)
                .into_iter()
                .fold(0.0f64, f64::max);
            black_box(worst)
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let worst = par::map_collect_seq(&curves, |c| normalize_curve(c).unwrap().residual)
                .into_iter()
                .fold(0.0f64, f64::max);
            black_box(worst)
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_forms_sweep,
    bench_validate_fibration,
    bench_leaf_integration,
    bench_normalize_batch
);
criterion_main!(benches);
