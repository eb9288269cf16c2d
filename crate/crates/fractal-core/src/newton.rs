//! The four extended Newton steps on polynomials, the modified-derivative
//! operator they share, an iteration driver, and empirical
//! convergence-order estimation.
//!
//! Root extraction convention: when the quantity under the `q`-th root is
//! exactly real, the real root of matching sign is taken (odd integer `q`),
//! so real problems produce real orbits; complex intermediates use the
//! principal branch.

use std::fmt;

use crate::complex::{is_positive_integer, principal_pow, Complex, OVERFLOW_LIMIT};
use crate::poly::Polynomial;

/// Failure of a single solver step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodError {
    /// The (possibly modified) derivative vanished at the iterate.
    SingularStep,
    /// The step is undefined, e.g. `x = 0` with a fractional or negative
    /// exponent in play.
    Domain,
    /// Derivative order outside `1..=degree`.
    DerivativeOrder,
    /// A zero `q` or `lambda` parameter.
    ZeroParameter,
}

impl fmt::Display for MethodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodError::SingularStep => write!(f, "derivative vanished; step undefined"),
            MethodError::Domain => write!(f, "step undefined at this point"),
            MethodError::DerivativeOrder => write!(f, "derivative order out of range"),
            MethodError::ZeroParameter => write!(f, "q and lambda must be nonzero"),
        }
    }
}

impl std::error::Error for MethodError {}

/// Which method a solve run iterates, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NewtonVariant {
    /// `x' = (x^q - lambda x^r f(x)/f^(i)(x))^(1/q)`
    Extended1 {
        q: f64,
        lambda: f64,
        r: f64,
        deriv_order: usize,
    },
    /// Extended1 with the modified derivative `[f^(i)]_m` in place of the
    /// exact one.
    Extended2 {
        q: f64,
        lambda: f64,
        r: f64,
        deriv_order: usize,
        m: f64,
    },
    /// `x' = (x^q - q x^(q-1) f(x)/f'(x))^(1/q)` (Tsuchikura-Horiguchi).
    TsuchikuraHoriguchi { q: f64 },
    /// `x' = x - lambda f(x)/f'(x)` (Murase-Newton, damped Newton).
    MuraseNewton { lambda: f64 },
}

impl NewtonVariant {
    /// Plain Newton-Raphson, the common reduction of all four methods.
    pub fn newton() -> Self {
        NewtonVariant::MuraseNewton { lambda: 1.0 }
    }

    pub fn validate(&self, poly: &Polynomial) -> Result<(), MethodError> {
        match *self {
            NewtonVariant::Extended1 {
                q,
                lambda,
                deriv_order,
                ..
            }
            | NewtonVariant::Extended2 {
                q,
                lambda,
                deriv_order,
                ..
            } => {
                if q == 0.0 || lambda == 0.0 {
                    return Err(MethodError::ZeroParameter);
                }
                if deriv_order < 1 || deriv_order > poly.degree() {
                    return Err(MethodError::DerivativeOrder);
                }
                Ok(())
            }
            NewtonVariant::TsuchikuraHoriguchi { q } => {
                if q == 0.0 {
                    Err(MethodError::ZeroParameter)
                } else {
                    Ok(())
                }
            }
            NewtonVariant::MuraseNewton { lambda } => {
                if lambda == 0.0 {
                    Err(MethodError::ZeroParameter)
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn step(&self, x: Complex, poly: &Polynomial) -> Result<Complex, MethodError> {
        match *self {
            NewtonVariant::Extended1 {
                q,
                lambda,
                r,
                deriv_order,
            } => method1_step(x, poly, q, lambda, r, deriv_order),
            NewtonVariant::Extended2 {
                q,
                lambda,
                r,
                deriv_order,
                m,
            } => method2_step(x, poly, q, lambda, r, deriv_order, m),
            NewtonVariant::TsuchikuraHoriguchi { q } => method3_step(x, poly, q),
            NewtonVariant::MuraseNewton { lambda } => method4_step(x, poly, lambda),
        }
    }
}

/// The modified `i`-th derivative `[f^(i)(x)]_m`.
///
/// For `i = degree - 1` the result is linear and the whole leading
/// coefficient product is replaced: `(degree-1)! * (m x + a_1)`. That one
/// form covers both uses the recurrence bridge needs (quadratics recover
/// Newton at `m = 2 a_0`; the family `z^(p+1) - z^p + c` yields
/// `p! (m z - 1)`). For any other order the exact derivative is evaluated
/// with `a_0` itself replaced by `m`, so `m = a_0` recovers `f^(i)`.
pub fn modified_derivative(
    poly: &Polynomial,
    i: usize,
    m: f64,
    x: Complex,
) -> Result<Complex, MethodError> {
    let p = poly.degree();
    if i < 1 || i > p {
        return Err(MethodError::DerivativeOrder);
    }
    if i == p - 1 {
        let factor = factorial(p - 1);
        return Ok(factor * (m * x + poly.coeff(1)));
    }
    // Exact i-th derivative with the leading coefficient swapped for m.
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..=(p - i) {
        let a = if j == 0 {
            Complex::new(m, 0.0)
        } else {
            poly.coeff(j)
        };
        let mut w = 1.0;
        for t in 0..i {
            w *= (p - j - t) as f64;
        }
        acc = acc * x + a * w;
    }
    Ok(acc)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Extended method 1: `x' = (x^q - lambda x^r f(x)/f^(i)(x))^(1/q)`.
pub fn method1_step(
    x: Complex,
    poly: &Polynomial,
    q: f64,
    lambda: f64,
    r: f64,
    deriv_order: usize,
) -> Result<Complex, MethodError> {
    if q == 0.0 || lambda == 0.0 {
        return Err(MethodError::ZeroParameter);
    }
    if deriv_order < 1 || deriv_order > poly.degree() {
        return Err(MethodError::DerivativeOrder);
    }
    let deriv = poly.eval_nth_derivative(deriv_order, x);
    generic_power_step(x, poly, q, lambda, r, deriv)
}

/// Extended method 2: method 1 with the modified derivative.
pub fn method2_step(
    x: Complex,
    poly: &Polynomial,
    q: f64,
    lambda: f64,
    r: f64,
    deriv_order: usize,
    m: f64,
) -> Result<Complex, MethodError> {
    if q == 0.0 || lambda == 0.0 {
        return Err(MethodError::ZeroParameter);
    }
    let deriv = modified_derivative(poly, deriv_order, m, x)?;
    generic_power_step(x, poly, q, lambda, r, deriv)
}

fn generic_power_step(
    x: Complex,
    poly: &Polynomial,
    q: f64,
    lambda: f64,
    r: f64,
    deriv: Complex,
) -> Result<Complex, MethodError> {
    if deriv.re == 0.0 && deriv.im == 0.0 {
        return Err(MethodError::SingularStep);
    }
    if x.re == 0.0 && x.im == 0.0 {
        // The power x^q and weight x^r are only defined at the origin for
        // integer exponents with q > 0 and r >= 0.
        let ok = is_positive_integer(q) && r >= 0.0 && r.fract() == 0.0;
        if !ok {
            return Err(MethodError::Domain);
        }
    }
    let xq = principal_pow(x, q);
    let xr = principal_pow(x, r);
    let w = xq - lambda * xr * poly.eval(x) / deriv;
    Ok(qth_root(w, q))
}

/// Extended method 3 (Tsuchikura-Horiguchi):
/// `x' = (x^q - q x^(q-1) f(x)/f'(x))^(1/q)`.
pub fn method3_step(x: Complex, poly: &Polynomial, q: f64) -> Result<Complex, MethodError> {
    if q == 0.0 {
        return Err(MethodError::ZeroParameter);
    }
    let deriv = poly.eval_nth_derivative(1, x);
    if deriv.re == 0.0 && deriv.im == 0.0 {
        return Err(MethodError::SingularStep);
    }
    if (x.re == 0.0 && x.im == 0.0) && !(is_positive_integer(q) || q == 1.0) {
        return Err(MethodError::Domain);
    }
    let xq = principal_pow(x, q);
    let xq1 = principal_pow(x, q - 1.0);
    let w = xq - q * xq1 * poly.eval(x) / deriv;
    Ok(qth_root(w, q))
}

/// Extended method 4 (Murase-Newton): `x' = x - lambda f(x)/f'(x)`.
pub fn method4_step(x: Complex, poly: &Polynomial, lambda: f64) -> Result<Complex, MethodError> {
    if lambda == 0.0 {
        return Err(MethodError::ZeroParameter);
    }
    let deriv = poly.eval_nth_derivative(1, x);
    if deriv.re == 0.0 && deriv.im == 0.0 {
        return Err(MethodError::SingularStep);
    }
    Ok(x - lambda * poly.eval(x) / deriv)
}

/// `w^(1/q)`: real root of matching sign where one exists for exactly
/// real `w`, principal branch otherwise.
fn qth_root(w: Complex, q: f64) -> Complex {
    if q == 1.0 {
        return w;
    }
    if w.im == 0.0 {
        if w.re >= 0.0 {
            return Complex::new(w.re.powf(1.0 / q), 0.0);
        }
        let q_is_odd_integer = q.fract() == 0.0 && (q.abs() as u64) % 2 == 1;
        if q_is_odd_integer {
            return Complex::new(-(-w.re).powf(1.0 / q), 0.0);
        }
    }
    principal_pow(w, 1.0 / q)
}

/// Deviation of the interior/exterior division-point identity: the Newton
/// step must equal `((lambda-1)/lambda) x + (1/lambda) x'` whenever `x'`
/// came from a Murase-Newton step with that `lambda`.
pub fn division_point_check(
    x: Complex,
    x_next: Complex,
    lambda: f64,
    poly: &Polynomial,
) -> Result<f64, MethodError> {
    let newton = method4_step(x, poly, 1.0)?;
    let combined = ((lambda - 1.0) / lambda) * x + x_next / lambda;
    Ok((combined - newton).norm())
}

/// Stopping tolerances for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Bound on `|f(x)|` at the accepted iterate.
    pub residual: f64,
    /// Bound on the final step size `|x_{k+1} - x_k|`.
    pub step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        // double-precision floor with headroom
        Tolerances {
            residual: 1e-12,
            step: 1e-13,
        }
    }
}

/// Why a solve run stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveStatus {
    /// Residual and step tolerance both met.
    Converged { root: Complex, steps: u32 },
    /// The orbit blew up past the overflow limit.
    Diverged { at_iter: u32 },
    /// A singular or undefined step, or an exhausted budget.
    Stalled {
        at_iter: u32,
        error: Option<MethodError>,
    },
}

impl SolveStatus {
    pub fn is_converged(&self) -> bool {
        matches!(self, SolveStatus::Converged { .. })
    }
}

/// Full record of one solve run.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub iterates: Vec<Complex>,
    pub status: SolveStatus,
}

impl IterationTrace {
    /// Error sequence `e_k = |x_k - root|` against a reference root.
    pub fn errors_against(&self, root: Complex) -> Vec<f64> {
        self.iterates.iter().map(|x| (x - root).norm()).collect()
    }
}

/// Iterates `variant` from `x0` until both tolerances hold, the iterate
/// overflows, or the budget runs out.
pub fn solve(
    x0: Complex,
    poly: &Polynomial,
    variant: NewtonVariant,
    max_iter: u32,
    tolerances: Tolerances,
) -> IterationTrace {
    debug_assert!(max_iter >= 1);
    let mut iterates = vec![x0];
    let mut x = x0;
    for k in 0..max_iter {
        let next = match variant.step(x, poly) {
            Ok(v) => v,
            Err(e) => {
                return IterationTrace {
                    iterates,
                    status: SolveStatus::Stalled {
                        at_iter: k,
                        error: Some(e),
                    },
                };
            }
        };
        iterates.push(next);
        if !(next.re.is_finite() && next.im.is_finite()) || next.norm() > OVERFLOW_LIMIT {
            return IterationTrace {
                iterates,
                status: SolveStatus::Diverged { at_iter: k + 1 },
            };
        }
        let step_len = (next - x).norm();
        let residual = poly.eval(next).norm();
        if residual <= tolerances.residual && step_len <= tolerances.step {
            return IterationTrace {
                iterates,
                status: SolveStatus::Converged {
                    root: next,
                    steps: k + 1,
                },
            };
        }
        x = next;
    }
    let at_iter = max_iter;
    IterationTrace {
        iterates,
        status: SolveStatus::Stalled {
            at_iter,
            error: None,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderEstimateError {
    NotConverged,
    TooFewIterates,
    NoUsableWindow,
}

impl fmt::Display for OrderEstimateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderEstimateError::NotConverged => write!(f, "trace did not converge"),
            OrderEstimateError::TooFewIterates => write!(f, "need at least 4 iterates"),
            OrderEstimateError::NoUsableWindow => {
                write!(f, "no error window above the rounding floor")
            }
        }
    }
}

impl std::error::Error for OrderEstimateError {}

/// Empirical convergence order: the median over the usable window of
/// `ln(e_{k+1}/e_k) / ln(e_k/e_{k-1})`.
///
/// Terms with errors under `100 * eps * (1 + |root|)` are dominated by
/// rounding and skipped, as are non-decreasing stretches.
pub fn estimate_order(trace: &IterationTrace, root: Complex) -> Result<f64, OrderEstimateError> {
    let ratios = usable_log_ratios(trace, root)?;
    Ok(median(ratios))
}

/// Median per-step error contraction `e_{k+1}/e_k` over the same usable
/// window as [`estimate_order`]; `1/2` for Newton at a double root.
pub fn error_ratio(trace: &IterationTrace, root: Complex) -> Result<f64, OrderEstimateError> {
    let (errors, usable) = usable_indices(trace, root)?;
    let ratios: Vec<f64> = usable.iter().map(|&k| errors[k + 1] / errors[k]).collect();
    if ratios.is_empty() {
        return Err(OrderEstimateError::NoUsableWindow);
    }
    Ok(median(ratios))
}

fn usable_log_ratios(
    trace: &IterationTrace,
    root: Complex,
) -> Result<Vec<f64>, OrderEstimateError> {
    let (errors, usable) = usable_indices(trace, root)?;
    let ratios: Vec<f64> = usable
        .iter()
        .map(|&k| (errors[k + 1] / errors[k]).ln() / (errors[k] / errors[k - 1]).ln())
        .collect();
    if ratios.is_empty() {
        return Err(OrderEstimateError::NoUsableWindow);
    }
    Ok(ratios)
}

/// Indices `k` such that `(e_{k-1}, e_k, e_{k+1})` are all above the
/// rounding floor and strictly decreasing.
fn usable_indices(
    trace: &IterationTrace,
    root: Complex,
) -> Result<(Vec<f64>, Vec<usize>), OrderEstimateError> {
    if !trace.status.is_converged() {
        return Err(OrderEstimateError::NotConverged);
    }
    if trace.iterates.len() < 4 {
        return Err(OrderEstimateError::TooFewIterates);
    }
    let errors = trace.errors_against(root);
    let floor = 100.0 * f64::EPSILON * (1.0 + root.norm());
    let usable = (1..errors.len() - 1)
        .filter(|&k| {
            errors[k - 1] > floor
                && errors[k] > floor
                && errors[k + 1] > floor
                && errors[k - 1] > errors[k]
                && errors[k] > errors[k + 1]
        })
        .collect();
    Ok((errors, usable))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN ratios"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn modified_derivative_quadratic_recovers_newton_denominator() {
        // f = a0 x^2 + a1 x + a2 with m = 2 a0 gives exactly f'(x)
        let poly = Polynomial::from_real(&[3.0, -2.0, 5.0]).unwrap();
        let x = c(1.7, -0.4);
        let md = modified_derivative(&poly, 1, 6.0, x).unwrap();
        let exact = poly.eval_nth_derivative(1, x);
        assert!(close(md, exact, 1e-14));
    }

    #[test]
    fn modified_derivative_mm_family() {
        // f = z^(p+1) - z^p + c with p = 2, i = 2, m = 3, x = 1:
        // 2! * (3*1 - 1) = 4
        let poly = Polynomial::murase_mandelbrot(2, c(0.3, 0.0));
        let v = modified_derivative(&poly, 2, 3.0, c(1.0, 0.0)).unwrap();
        assert!(close(v, c(4.0, 0.0), 1e-14));
    }

    #[test]
    fn modified_derivative_general_hook_recovers_exact_at_m_a0() {
        let poly = Polynomial::from_real(&[2.5, 1.0, -3.0, 0.5, 4.0]).unwrap();
        let mut state = 77u64;
        for _ in 0..100 {
            let x = c(6.0 * unit(&mut state) - 3.0, 6.0 * unit(&mut state) - 3.0);
            // Orders other than degree-1 use the a_0 -> m substitution.
            for i in [1usize, 2, 4] {
                let md = modified_derivative(&poly, i, 2.5, x).unwrap();
                let exact = poly.eval_nth_derivative(i, x);
                assert!(close(md, exact, 1e-12), "i={i} x={x}");
            }
        }
    }

    #[test]
    fn modified_derivative_rejects_bad_order() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        assert_eq!(
            modified_derivative(&poly, 0, 1.0, c(1.0, 0.0)),
            Err(MethodError::DerivativeOrder)
        );
        assert_eq!(
            modified_derivative(&poly, 3, 1.0, c(1.0, 0.0)),
            Err(MethodError::DerivativeOrder)
        );
    }

    #[test]
    fn method1_classic_newton_hand_steps() {
        // f = x^2 - 2 from x = 1: 1 - (-1)/2 = 1.5
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let next = method1_step(c(1.0, 0.0), &poly, 1.0, 1.0, 0.0, 1).unwrap();
        assert!(close(next, c(1.5, 0.0), 1e-14));

        // f = x^3 - 14 x^2 + 48 from x = 1: 1 - 35/(-25) = 2.4
        let hearth = Polynomial::from_real(&[1.0, -14.0, 0.0, 48.0]).unwrap();
        let next = method1_step(c(1.0, 0.0), &hearth, 1.0, 1.0, 0.0, 1).unwrap();
        assert!(close(next, c(2.4, 0.0), 1e-14));
    }

    #[test]
    fn roots_are_fixed_points() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let root = c(2.0f64.sqrt(), 0.0);
        let next = method1_step(root, &poly, 1.0, 1.0, 0.0, 1).unwrap();
        assert!(close(next, root, 1e-14));
    }

    #[test]
    fn method3_one_step_square_root() {
        // f = x^2 - 2, q = 2, from x = 3: lands on sqrt(2) in one step
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let next = method3_step(c(3.0, 0.0), &poly, 2.0).unwrap();
        assert!(close(next, c(2.0f64.sqrt(), 0.0), 1e-13));
    }

    #[test]
    fn method3_q1_is_newton() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let a = method3_step(c(1.3, 0.2), &poly, 1.0).unwrap();
        let b = method4_step(c(1.3, 0.2), &poly, 1.0).unwrap();
        assert!(close(a, b, 1e-14));
    }

    #[test]
    fn method3_on_the_mm_family_closed_form() {
        // On f = z^{p+1} - z^p + c with q = p the step reduces to the
        // rational (z^{p+1} - p c)/((p+1) z - p) before root extraction.
        let mut state = 0xfeed_beefu64;
        for p in 1u32..=3 {
            for _ in 0..50 {
                let z = c(4.0 * unit(&mut state) - 2.0, 4.0 * unit(&mut state) - 2.0);
                let cc = c(4.0 * unit(&mut state) - 2.0, 4.0 * unit(&mut state) - 2.0);
                let pf = f64::from(p);
                let denom = (pf + 1.0) * z - pf;
                if denom.norm() < 1e-2 || z.norm() < 1e-2 {
                    continue;
                }
                let poly = Polynomial::murase_mandelbrot(p, cc);
                let stepped = method3_step(z, &poly, pf).unwrap();
                let rational = (crate::complex::int_pow(z, p + 1) - pf * cc) / denom;
                let expected = crate::complex::branch_pow(
                    rational,
                    crate::complex::BranchSpec::principal(1.0 / pf).unwrap(),
                );
                assert!(close(stepped, expected, 1e-10), "p={p} z={z} c={cc}");
            }
        }
    }

    #[test]
    fn method4_hand_value() {
        // lambda = 2, f = x^2 - 2, x = 2: 2 - 2*(2/4) = 1
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let next = method4_step(c(2.0, 0.0), &poly, 2.0).unwrap();
        assert!(close(next, c(1.0, 0.0), 1e-14));
    }

    #[test]
    fn division_point_identity() {
        let poly = Polynomial::from_real(&[1.0, -3.0, 1.0, 2.0]).unwrap();
        for lambda in [2.0, 1.0, 0.5] {
            let x = c(2.3, 0.8);
            let next = method4_step(x, &poly, lambda).unwrap();
            let dev = division_point_check(x, next, lambda, &poly).unwrap();
            assert!(dev <= 1e-12 * (1.0 + x.norm()), "lambda={lambda} dev={dev}");
        }
    }

    #[test]
    fn solve_hearth_by_newton() {
        let hearth = Polynomial::from_real(&[1.0, -14.0, 0.0, 48.0]).unwrap();
        let trace = solve(
            c(1.0, 0.0),
            &hearth,
            NewtonVariant::newton(),
            200,
            Tolerances::default(),
        );
        match trace.status {
            SolveStatus::Converged { root, steps } => {
                assert!((root - c(2.0, 0.0)).norm() <= 1e-10);
                assert!(steps <= 10, "took {steps} steps");
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn solve_one_step_exactness_trace() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let trace = solve(
            c(3.0, 0.0),
            &poly,
            NewtonVariant::TsuchikuraHoriguchi { q: 2.0 },
            200,
            Tolerances::default(),
        );
        match trace.status {
            SolveStatus::Converged { root, steps } => {
                // The landing is one step; declaring convergence takes one
                // confirming step on top (both tolerances must hold).
                assert!(steps <= 2, "steps = {steps}");
                assert!((root - c(2.0f64.sqrt(), 0.0)).norm() <= 1e-12);
                assert!((trace.iterates[1] - c(2.0f64.sqrt(), 0.0)).norm() <= 1e-12);
            }
            other => panic!("expected one-step convergence, got {other:?}"),
        }
    }

    #[test]
    fn solve_stalls_on_zero_derivative() {
        // f = x^2 + 1 from x = 0: f'(0) = 0
        let poly = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let trace = solve(
            c(0.0, 0.0),
            &poly,
            NewtonVariant::newton(),
            50,
            Tolerances::default(),
        );
        assert!(matches!(
            trace.status,
            SolveStatus::Stalled {
                at_iter: 0,
                error: Some(MethodError::SingularStep)
            }
        ));
    }

    #[test]
    fn order_estimate_quadratic_for_simple_root() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let trace = solve(
            c(3.0, 0.0),
            &poly,
            NewtonVariant::newton(),
            200,
            Tolerances::default(),
        );
        let order = estimate_order(&trace, c(2.0f64.sqrt(), 0.0)).unwrap();
        assert!((1.8..=2.2).contains(&order), "order = {order}");
    }

    #[test]
    fn order_estimate_linear_for_double_root() {
        // (x-1)^2 from x = 2: errors halve each step
        let poly = Polynomial::from_real(&[1.0, -2.0, 1.0]).unwrap();
        let trace = solve(
            c(2.0, 0.0),
            &poly,
            NewtonVariant::newton(),
            200,
            Tolerances::default(),
        );
        assert!(trace.status.is_converged(), "status {:?}", trace.status);
        let order = estimate_order(&trace, c(1.0, 0.0)).unwrap();
        assert!((0.9..=1.1).contains(&order), "order = {order}");
        let ratio = error_ratio(&trace, c(1.0, 0.0)).unwrap();
        assert!((ratio - 0.5).abs() <= 0.05, "ratio = {ratio}");
    }

    #[test]
    fn order_estimate_needs_enough_iterates() {
        let poly = Polynomial::from_real(&[1.0, 0.0, -2.0]).unwrap();
        let trace = solve(
            c(3.0, 0.0),
            &poly,
            NewtonVariant::TsuchikuraHoriguchi { q: 2.0 },
            200,
            Tolerances::default(),
        );
        assert_eq!(
            estimate_order(&trace, c(2.0f64.sqrt(), 0.0)),
            Err(OrderEstimateError::TooFewIterates)
        );
    }

    #[test]
    fn method1_domain_guard_at_origin() {
        let poly = Polynomial::from_real(&[1.0, -1.0, 0.25]).unwrap();
        // Non-integer r at x = 0 is undefined.
        assert_eq!(
            method1_step(c(0.0, 0.0), &poly, 1.0, 1.0, 0.5, 1),
            Err(MethodError::Domain)
        );
        // Integer q, r = 0 works: plain Newton from the origin.
        let next = method1_step(c(0.0, 0.0), &poly, 1.0, 1.0, 0.0, 1).unwrap();
        assert!(close(next, c(0.25, 0.0), 1e-14));
    }

    fn unit(state: &mut u64) -> f64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}
