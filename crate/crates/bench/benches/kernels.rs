use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hwpkit::frames::{bargmann, build_frame, validate_fiducial, FrameKind};
use hwpkit::group::{derived_series, hwp_group};
use hwpkit::noise::{noisy_reconstruct, NoiseConfig};
use hwpkit::operators::{dp_operator, dp_operator_by_factors};
use hwpkit::wigner::{unified_product, unified_ww};
use hwpkit::{presets, Dim};

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("dp_operator");
    for n in [3u32, 7, 15, 31] {
        let d = Dim::new(n).unwrap();
        let (a, b, gm) = (d.elem(2), d.elem(-1), d.elem(1));
        g.bench_with_input(BenchmarkId::new("closed_form", n), &d, |bn, _| {
            bn.iter(|| dp_operator(black_box(a), black_box(b), gm, 1))
        });
        g.bench_with_input(BenchmarkId::new("factors", n), &d, |bn, _| {
            bn.iter(|| dp_operator_by_factors(black_box(a), black_box(b), gm, 1))
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("derived_series");
    g.sample_size(10);
    for n in [3u32, 5] {
        let d = Dim::new(n).unwrap();
        let group = hwp_group(d).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &group, |bn, grp| {
            bn.iter(|| derived_series(grp).unwrap())
        });
    }
    g.finish();
}

fn wigner_weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("unified_ww");
    for n in [3u32, 7, 15] {
        let d = Dim::new(n).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        let theta = hwpkit::random::operator(d, &mut rng);
        g.bench_with_input(BenchmarkId::new("table", n), &theta, |bn, t| {
            bn.iter(|| unified_ww(t).unwrap())
        });
        if n <= 7 {
            let t = unified_ww(&theta).unwrap();
            g.bench_with_input(BenchmarkId::new("product", n), &t, |bn, t| {
                bn.iter(|| unified_product(t, t).unwrap())
            });
        }
    }
    g.finish();
}

fn noise(c: &mut Criterion) {
    let mut g = c.benchmark_group("noise_trial");
    for n in [3u32, 5] {
        let (f, s) = presets::vectors_for(n).unwrap();
        let fid = validate_fiducial(&s).unwrap();
        for kind in [FrameKind::Hw, FrameKind::Hwp] {
            let frame = build_frame(kind, &fid);
            let cfg = NoiseConfig::default();
            let label = format!("{kind:?}/{n}");
            g.bench_function(label, |bn| {
                let mut t = 0;
                bn.iter(|| {
                    t += 1;
                    noisy_reconstruct(&frame, &f, &cfg, t).unwrap()
                })
            });
        }
        let frame = build_frame(FrameKind::Hwp, &fid);
        g.bench_function(format!("bargmann/{n}"), |bn| {
            bn.iter(|| bargmann(&frame, black_box(&f)))
        });
    }
    g.finish();
}

criterion_group!(benches, operators, series, wigner_weyl, noise);
criterion_main!(benches);
