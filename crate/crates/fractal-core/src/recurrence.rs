//! One step function per iteration family, each a pure map
//! `(z_k, c, params) -> z_{k+1}`.
//!
//! The three Murase methods are the historical real recurrences for the
//! hearth cubic `x^3 - x^2 + c = 0`; they reject negative radicands
//! instead of continuing into the complex plane. The complex families
//! generalize `z_{k+1} = z_k^2 + c` and power the membership scans.

use std::fmt;

use crate::complex::{branch_pow, int_pow, is_positive_integer, BranchSpec, Complex};
use crate::poly::Polynomial;

/// Failure of a single recurrence step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepError {
    /// The step's denominator vanished.
    Pole,
    /// The step left its domain (negative radicand in a real method).
    Domain,
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::Pole => write!(f, "iteration hit a pole"),
            StepError::Domain => write!(f, "iteration left its domain"),
        }
    }
}

impl std::error::Error for StepError {}

/// `x_{k+1} = sqrt(x_k^3 + c)`, nonnegative root.
pub fn murase_first_step(x: f64, c: f64) -> Result<f64, StepError> {
    let radicand = x * x * x + c;
    if radicand < 0.0 {
        return Err(StepError::Domain);
    }
    Ok(radicand.sqrt())
}

/// `x_{k+1} = sqrt(c / (1 - x_k))`, nonnegative root; pole at `x = 1`.
pub fn murase_second_step(x: f64, c: f64) -> Result<f64, StepError> {
    let denom = 1.0 - x;
    if denom == 0.0 {
        return Err(StepError::Pole);
    }
    let radicand = c / denom;
    if radicand < 0.0 {
        return Err(StepError::Domain);
    }
    Ok(radicand.sqrt())
}

/// `x_{k+1} = sqrt((c - x_k^3) / (1 - 2 x_k))`, nonnegative root; pole at
/// `x = 1/2`.
pub fn murase_third_step(x: f64, c: f64) -> Result<f64, StepError> {
    let denom = 1.0 - 2.0 * x;
    if denom == 0.0 {
        return Err(StepError::Pole);
    }
    let radicand = (c - x * x * x) / denom;
    if radicand < 0.0 {
        return Err(StepError::Domain);
    }
    Ok(radicand.sqrt())
}

/// Recurrence formula 1: `z_{k+1}^p = ((m-1) z^{p+1} - c) / (m z - 1)`,
/// the family behind the Newton-Mandelbrot sets `NM_{p,c,m}`.
///
/// For `p = 1` the right-hand side itself is the next iterate; for
/// `p >= 2` the `p`-th root on the sheet `root_branch` is taken.
pub fn mm1_step(
    z: Complex,
    c: Complex,
    p: u32,
    m: f64,
    root_branch: i32,
) -> Result<Complex, StepError> {
    let denom = m * z - Complex::new(1.0, 0.0);
    if denom.re == 0.0 && denom.im == 0.0 {
        return Err(StepError::Pole);
    }
    let w = ((m - 1.0) * int_pow(z, p + 1) - c) / denom;
    if p == 1 {
        return Ok(w);
    }
    let branch = BranchSpec::new(1.0 / f64::from(p), root_branch).expect("p >= 2");
    Ok(branch_pow(w, branch))
}

/// Recurrence formula 2: `z_{k+1} = (z^{p+1} + c)^{1/p}`; equals formula 1
/// with `m = 0`.
pub fn mm2_step(z: Complex, c: Complex, p: u32, root_branch: i32) -> Result<Complex, StepError> {
    let w = int_pow(z, p + 1) + c;
    if p == 1 {
        return Ok(w);
    }
    let branch = BranchSpec::new(1.0 / f64::from(p), root_branch).expect("p >= 2");
    Ok(branch_pow(w, branch))
}

/// Recurrence formula 3: `z_{k+1} = (z^m + c)^n` for positive real `m`,
/// `n`, the family behind the Murase-Mandelbrot sets `M_{m,c,n}`. The
/// inner power takes its principal branch; `branch` selects the sheet of
/// the outer power. Integer exponents use plain repeated multiplication.
pub fn mm3_step(z: Complex, c: Complex, m: f64, n: f64, branch: i32) -> Result<Complex, StepError> {
    let inner = if is_positive_integer(m) {
        int_pow(z, m as u32)
    } else {
        branch_pow(z, BranchSpec::principal(m).expect("m > 0"))
    };
    let w = inner + c;
    if is_positive_integer(n) {
        Ok(int_pow(w, n as u32))
    } else {
        Ok(branch_pow(w, BranchSpec::new(n, branch).expect("n > 0")))
    }
}

/// The general recurrence obtained from `f(x) = 0` by isolating the
/// `m x^p + a_1 x^{p-1}` block:
///
/// ```text
/// z_{k+1}^{p-1} = ((m - a_0) z^p - a_2 z^{p-2} - ... - a_{p-1} z - a_p) / (m z + a_1)
/// ```
pub fn general_p_step(
    z: Complex,
    poly: &Polynomial,
    m: f64,
    root_branch: i32,
) -> Result<Complex, StepError> {
    let p = poly.degree();
    debug_assert!(p >= 2);
    let denom = m * z + poly.coeff(1);
    if denom.re == 0.0 && denom.im == 0.0 {
        return Err(StepError::Pole);
    }
    // (m - a_0) z^p minus the tail a_2 z^{p-2} + ... + a_p, Horner-style.
    let mut tail = Complex::new(0.0, 0.0);
    for j in 2..=p {
        tail = tail * z + poly.coeff(j);
    }
    let numer = (m - poly.coeff(0)) * int_pow(z, p as u32) - tail;
    let w = numer / denom;
    if p == 2 {
        return Ok(w);
    }
    let branch = BranchSpec::new(1.0 / (p as f64 - 1.0), root_branch).expect("p >= 3");
    Ok(branch_pow(w, branch))
}

/// Which real Murase method to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuraseMethod {
    First,
    Second,
    Third,
}

impl MuraseMethod {
    pub fn step(self, x: f64, c: f64) -> Result<f64, StepError> {
        match self {
            MuraseMethod::First => murase_first_step(x, c),
            MuraseMethod::Second => murase_second_step(x, c),
            MuraseMethod::Third => murase_third_step(x, c),
        }
    }
}

/// A fully parameterized iteration family, everything `classify_orbit`
/// needs to advance an orbit by one step.
#[derive(Debug, Clone, PartialEq)]
pub enum Recurrence {
    /// Real method `x_{k+1} = sqrt(x^3 + c)`.
    MuraseFirst,
    /// Real method `x_{k+1} = sqrt(c / (1 - x))`.
    MuraseSecond,
    /// Real method `x_{k+1} = sqrt((c - x^3) / (1 - 2x))`.
    MuraseThird,
    /// Formula 1, the `NM_{p,c,m}` family.
    Mm1 { p: u32, m: f64, root_branch: i32 },
    /// Formula 2, `z_{k+1} = (z^{p+1} + c)^{1/p}`.
    Mm2 { p: u32, root_branch: i32 },
    /// Formula 3, the `M_{m,c,n}` family.
    Mm3 { m: f64, n: f64, branch: i32 },
    /// `z_{k+1} = z^d + c`.
    PlainPower { d: u32 },
    /// The general polynomial recurrence.
    GeneralP {
        poly: Polynomial,
        m: f64,
        root_branch: i32,
    },
}

impl Recurrence {
    /// Advances one step. Real methods require a real `z` and `c`; the
    /// engine guards that before iterating.
    pub fn step(&self, z: Complex, c: Complex) -> Result<Complex, StepError> {
        match self {
            Recurrence::MuraseFirst => real_step(MuraseMethod::First, z, c),
            Recurrence::MuraseSecond => real_step(MuraseMethod::Second, z, c),
            Recurrence::MuraseThird => real_step(MuraseMethod::Third, z, c),
            Recurrence::Mm1 { p, m, root_branch } => mm1_step(z, c, *p, *m, *root_branch),
            Recurrence::Mm2 { p, root_branch } => mm2_step(z, c, *p, *root_branch),
            Recurrence::Mm3 { m, n, branch } => mm3_step(z, c, *m, *n, *branch),
            Recurrence::PlainPower { d } => Ok(int_pow(z, *d) + c),
            Recurrence::GeneralP {
                poly,
                m,
                root_branch,
            } => general_p_step(z, poly, *m, *root_branch),
        }
    }

    /// True for the historical real-axis methods.
    pub fn is_real_only(&self) -> bool {
        matches!(
            self,
            Recurrence::MuraseFirst | Recurrence::MuraseSecond | Recurrence::MuraseThird
        )
    }

    /// Validates the stored parameters against each family's domain.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Recurrence::Mm1 { p, .. } if *p < 1 => Err("mm1 requires p >= 1".into()),
            Recurrence::Mm2 { p, .. } if *p < 1 => Err("mm2 requires p >= 1".into()),
            Recurrence::Mm3 { m, n, .. } if !(*m > 0.0 && *n > 0.0) => {
                Err("mm3 requires m > 0 and n > 0".into())
            }
            Recurrence::PlainPower { d } if *d < 1 => Err("power requires d >= 1".into()),
            Recurrence::GeneralP { poly, .. } if poly.degree() < 2 => {
                Err("general recurrence requires degree >= 2".into())
            }
            _ => Ok(()),
        }
    }
}

fn real_step(method: MuraseMethod, z: Complex, c: Complex) -> Result<Complex, StepError> {
    if z.im != 0.0 || c.im != 0.0 {
        return Err(StepError::Domain);
    }
    method.step(z.re, c.re).map(|x| Complex::new(x, 0.0))
}

/// Outcome of iterating a real fixed-point method to convergence.
#[derive(Debug, Clone)]
pub struct FixedPointRun {
    pub iterates: Vec<f64>,
    pub converged: bool,
}

impl FixedPointRun {
    pub fn last(&self) -> f64 {
        *self.iterates.last().expect("at least x_0")
    }
}

/// Iterates `x_{k+1} = step(x_k)` from `x0` until the step size drops to
/// `step_tol` or the budget runs out.
pub fn iterate_to_fixed_point(
    method: MuraseMethod,
    c: f64,
    x0: f64,
    max_iter: u32,
    step_tol: f64,
) -> Result<FixedPointRun, StepError> {
    let mut iterates = vec![x0];
    let mut x = x0;
    for _ in 0..max_iter {
        let next = method.step(x, c)?;
        iterates.push(next);
        let done = (next - x).abs() <= step_tol;
        x = next;
        if done {
            return Ok(FixedPointRun {
                iterates,
                converged: true,
            });
        }
    }
    Ok(FixedPointRun {
        iterates,
        converged: false,
    })
}
