//! Grid-scan throughput: sequential baseline vs the rayon path at
//! several worker counts, on an integer-power map and a fractional-power
//! map (the latter spends its time in polar powers).

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fractal_core::{
    scan_grid, scan_grid_sequential, EscapeRadius, GridSpec, Recurrence, ScanParams,
};

fn bench_scan(c: &mut Criterion) {
    let grid = GridSpec::default_window(192, 192);
    let cases = [
        (
            "mandelbrot",
            Recurrence::PlainPower { d: 2 },
            EscapeRadius::Fixed(2.0),
        ),
        (
            "m3c2-sheet1",
            Recurrence::Mm3 {
                m: 3.0,
                n: 0.5,
                branch: 1,
            },
            EscapeRadius::Fixed(4.0),
        ),
    ];

    for (name, spec, radius) in cases {
        let mut group = c.benchmark_group(format!("scan/{name}"));
        let params = ScanParams::new(radius, 100);
        group.bench_function("sequential", |b| {
            b.iter(|| black_box(scan_grid_sequential(&grid, &spec, &params)))
        });
        #[cfg(feature = "parallel")]
        for workers in [1usize, 2, 4, 8] {
            group.bench_with_input(
                BenchmarkId::new("parallel", workers),
                &workers,
                |b, &workers| {
                    let params = params.with_workers(workers);
                    b.iter(|| black_box(scan_grid(&grid, &spec, &params)))
                },
            );
        }
        group.finish();
    }
}

fn bench_orbit(c: &mut Criterion) {
    use fractal_core::classify_orbit;
    use fractal_core::Complex;

    let mut group = c.benchmark_group("orbit");
    group.bench_function("near-boundary", |b| {
        let spec = Recurrence::PlainPower { d: 2 };
        b.iter(|| {
            black_box(classify_orbit(
                black_box(Complex::new(-0.75, 0.05)),
                &spec,
                2.0,
                2000,
                false,
            ))
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scan, bench_orbit);
criterion_main!(benches);
