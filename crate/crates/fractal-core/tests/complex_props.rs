//! Invariants of the branch-aware power arithmetic.

mod common;

use std::f64::consts::{PI, TAU};

use common::{close, Rng};
use fractal_core::{branch_pow, int_pow, principal_arg, BranchSpec, Complex};
use proptest::prelude::*;

#[test]
fn principal_arg_stays_in_range_on_a_fine_ring() {
    // 10^4 angles around the unit circle, including the cut.
    let n = 10_000;
    for t in 0..n {
        let theta = -PI + TAU * (t as f64 + 1.0) / n as f64;
        let z = Complex::new(theta.cos(), theta.sin());
        let arg = principal_arg(z).unwrap();
        assert!(arg > -PI && arg <= PI, "theta={theta} arg={arg}");
        // Angles agree up to wrap-around rounding at the seam.
        let diff = (arg - theta).abs();
        assert!(
            diff < 1e-9 || (TAU - diff) < 1e-9,
            "theta={theta} arg={arg}"
        );
    }
}

#[test]
fn dth_roots_are_genuine_roots_on_every_sheet() {
    let mut rng = Rng::new(0x5eed_0001);
    for _ in 0..50 {
        let z = rng.complex_in(3.0);
        if z.norm() < 1e-3 {
            continue;
        }
        for d in 1u32..=6 {
            for k in 0..d {
                let branch = BranchSpec::new(1.0 / f64::from(d), k as i32).unwrap();
                let root = branch_pow(z, branch);
                let restored = int_pow(root, d);
                assert!(
                    close(restored, z, 1e-9),
                    "z={z} d={d} k={k} restored={restored}"
                );
            }
        }
    }
}

#[test]
fn branch_pow_agrees_with_int_pow_for_integer_exponents() {
    let mut rng = Rng::new(0x5eed_0002);
    for _ in 0..200 {
        let z = rng.complex_in(2.0);
        if z.norm() < 1e-6 || z.norm() > 10.0 {
            continue;
        }
        for d in [1u32, 2, 3, 5, 9, 12] {
            let via_polar = branch_pow(z, BranchSpec::new(f64::from(d), 0).unwrap());
            let via_mul = int_pow(z, d);
            assert!(
                (via_polar - via_mul).norm() <= 1e-9 * via_mul.norm().max(1e-30),
                "z={z} d={d}"
            );
        }
    }
}

proptest! {
    #[test]
    fn principal_arg_always_in_half_open_interval(
        re in -1e6f64..1e6,
        im in -1e6f64..1e6,
    ) {
        prop_assume!(re != 0.0 || im != 0.0);
        let arg = principal_arg(Complex::new(re, im)).unwrap();
        prop_assert!(arg > -PI && arg <= PI);
    }

    #[test]
    fn sheet_relation(
        re in -4.0f64..4.0,
        im in -4.0f64..4.0,
        s in 0.05f64..3.0,
        n in -3i32..=3,
    ) {
        let z = Complex::new(re, im);
        prop_assume!(z.norm() > 1e-3);
        prop_assume!(s.fract() != 0.0);
        // z^{s,n} = z^{s,0} * exp(i 2 pi n s)
        let lhs = branch_pow(z, BranchSpec::new(s, n).unwrap());
        let phase = Complex::from_polar(1.0, TAU * f64::from(n) * s);
        let rhs = branch_pow(z, BranchSpec::new(s, 0).unwrap()) * phase;
        prop_assert!(close(lhs, rhs, 1e-9), "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn int_pow_composes(
        re in -4.0f64..4.0,
        im in -4.0f64..4.0,
        m in 1u32..=4,
        n in 1u32..=3,
    ) {
        let z = Complex::new(re, im);
        prop_assume!(z.norm() <= 4.0);
        let a = int_pow(int_pow(z, m), n);
        let b = int_pow(z, m * n);
        prop_assert!(
            (a - b).norm() <= 1e-9 * b.norm().max(1e-300),
            "z={z} m={m} n={n}"
        );
    }
}
