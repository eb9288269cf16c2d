//! Escape-time fractals from the Murase-Mandelbrot recurrence families
//! and the extended Newton's methods that generate them.
//!
//! The crate is organized around five pieces:
//!
//! - [`complex`]: multi-branch complex powers and the single place where
//!   branch-cut conventions are decided;
//! - [`poly`]: polynomials with complex coefficients;
//! - [`recurrence`]: one pure step function per iteration family, from
//!   the historical real methods for `x^3 - x^2 + c = 0` up to
//!   `z' = (z^m + c)^n` on a chosen sheet;
//! - [`newton`]: the four extended Newton steps, a solve driver, and
//!   empirical convergence-order estimation;
//! - [`escape`] / [`grid`] / [`analysis`]: orbit classification,
//!   deterministic (and, with the `parallel` feature, rayon-parallel)
//!   membership scans, and map equivalence checks.

pub mod analysis;
pub mod complex;
pub mod escape;
pub mod grid;
pub mod newton;
pub mod poly;
pub mod recurrence;

pub use analysis::{
    bounded_component_sizes, compare_maps, connected_components, power_relation_check,
    MapComparison,
};
pub use complex::{branch_pow, int_pow, principal_arg, BranchSpec, Complex, OVERFLOW_LIMIT};
pub use escape::{classify_orbit, InvalidReason, OrbitOutcome, OrbitStatus};
pub use grid::{
    scan_grid, scan_grid_sequential, EscapeRadius, GridSpec, MembershipMap, ScanParams,
};
pub use newton::{
    division_point_check, estimate_order, modified_derivative, solve, IterationTrace,
    NewtonVariant, SolveStatus, Tolerances,
};
pub use poly::Polynomial;
pub use recurrence::{MuraseMethod, Recurrence, StepError};
