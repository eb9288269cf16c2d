//! Engine-level invariants: determinism, budget monotonicity, bailout
//! sufficiency, and the power-composition equivalences.

mod common;

use common::Rng;
use fractal_core::{
    int_pow, power_relation_check, scan_grid, scan_grid_sequential, Complex, EscapeRadius,
    GridSpec, OrbitStatus, Recurrence, ScanParams,
};

#[test]
fn scan_is_deterministic_across_worker_counts() {
    let grid = GridSpec::default_window(96, 96);
    let spec = Recurrence::Mm3 {
        m: 3.0,
        n: 0.5,
        branch: 1,
    };
    let params = ScanParams::new(EscapeRadius::Fixed(4.0), 80);
    let reference = scan_grid_sequential(&grid, &spec, &params);
    for workers in [1usize, 4, 8] {
        let map = scan_grid(&grid, &spec, &params.with_workers(workers));
        assert_eq!(reference.cells, map.cells, "workers={workers}");
    }
}

#[test]
fn escapes_are_stable_under_larger_budgets() {
    let grid = GridSpec::default_window(64, 64);
    let spec = Recurrence::PlainPower { d: 2 };
    let short = scan_grid(&grid, &spec, &ScanParams::new(EscapeRadius::Fixed(2.0), 60));
    let long = scan_grid(
        &grid,
        &spec,
        &ScanParams::new(EscapeRadius::Fixed(2.0), 100),
    );
    for (s, l) in short.cells.iter().zip(&long.cells) {
        if let OrbitStatus::Escaped { at_iter } = s {
            assert_eq!(
                *l,
                OrbitStatus::Escaped { at_iter: *at_iter },
                "escape index changed with a larger budget"
            );
        }
    }
}

#[test]
fn bailout_threshold_forces_growth_for_power_maps() {
    // Past 2 * max(2, |c|)^{1/(d-1)} the modulus must increase strictly.
    let mut rng = Rng::new(0x5eed_0301);
    for d in [2u32, 3, 6] {
        for _ in 0..1000 {
            let c = rng.complex_in(3.0);
            let threshold = 2.0 * c.norm().max(2.0).powf(1.0 / f64::from(d - 1));
            let radius = threshold * rng.range(1.001, 3.0);
            let angle = rng.range(-std::f64::consts::PI, std::f64::consts::PI);
            let z = Complex::from_polar(radius, angle);
            let next = int_pow(z, d) + c;
            assert!(
                next.norm() > z.norm(),
                "d={d} c={c} |z|={} |z'|={}",
                z.norm(),
                next.norm()
            );
        }
    }
}

#[test]
fn power_relation_deviation_small_for_all_factorizations() {
    let mut rng = Rng::new(0x5eed_0302);
    for m in 1u32..=12 {
        for n in 1u32..=12 {
            if m * n > 12 {
                continue;
            }
            for _ in 0..50 {
                let c = rng.complex_in(1.5);
                let dev = power_relation_check(c, m, n, 20, 10.0);
                assert!(dev <= 1e-9, "m={m} n={n} c={c} dev={dev}");
            }
        }
    }
}

#[test]
fn newton_family_bounded_fractions_order_by_m() {
    // Moving m from the Newton end toward 0 shrinks the bounded region
    // monotonically (sampled at m = 2, 0.1, 0).
    let grid = GridSpec::default_window(96, 96);
    let params = ScanParams::new(EscapeRadius::Fixed(4.0), 60);
    let fraction = |m: f64| {
        let spec = Recurrence::Mm1 {
            p: 1,
            m,
            root_branch: 0,
        };
        scan_grid(&grid, &spec, &params).bounded_fraction()
    };
    let f2 = fraction(2.0);
    let f01 = fraction(0.1);
    let f0 = fraction(0.0);
    assert!(f2 >= f01, "f(2)={f2} f(0.1)={f01}");
    assert!(f01 >= f0, "f(0.1)={f01} f(0)={f0}");
}
