//! Complex arithmetic with explicit multi-branch power evaluation.
//!
//! Every branch-cut decision made by this crate lives here. The principal
//! argument is taken in `(-pi, pi]` with the cut along the negative real
//! axis, and `Arg(-x) = +pi` for `x > 0`. A fractional power selects one
//! sheet of the multi-valued function
//!
//! ```text
//! z^s = |z|^s * exp(i * s * (Arg z + 2*pi*n)),   n = 0, ±1, ±2, ...
//! ```
//!
//! via the integer branch index `n` carried by [`BranchSpec`].

use std::f64::consts::{PI, TAU};
use std::fmt;

pub use num_complex::Complex64 as Complex;

/// Magnitude above which a component is treated as overflowed. Consumers
/// classify such values as escaped rather than letting NaNs propagate.
pub const OVERFLOW_LIMIT: f64 = 1e150;

/// True when either component is NaN, infinite, or beyond [`OVERFLOW_LIMIT`].
#[inline]
pub fn is_overflowed(z: Complex) -> bool {
    !(z.re.is_finite() && z.im.is_finite())
        || z.re.abs() > OVERFLOW_LIMIT
        || z.im.abs() > OVERFLOW_LIMIT
}

/// Error raised when the argument of zero is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroArgument;

impl fmt::Display for ZeroArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "principal argument is undefined at z = 0")
    }
}

impl std::error::Error for ZeroArgument {}

/// Error raised by [`BranchSpec::new`] for a non-positive exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvalidExponent(pub f64);

impl fmt::Display for InvalidExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "power exponent must be positive and finite, got {}",
            self.0
        )
    }
}

impl std::error::Error for InvalidExponent {}

/// Principal argument in `(-pi, pi]`.
///
/// The branch cut runs along the negative real axis and belongs to the
/// upper sheet: `principal_arg(-1) = +pi`, never `-pi`, regardless of the
/// sign of a zero imaginary part.
pub fn principal_arg(z: Complex) -> Result<f64, ZeroArgument> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(ZeroArgument);
    }
    Ok(arg_unchecked(z))
}

#[inline]
fn arg_unchecked(z: Complex) -> f64 {
    let theta = z.im.atan2(z.re);
    // atan2(-0.0, x < 0) returns -pi; fold it onto the chosen cut side.
    if theta == -PI {
        PI
    } else {
        theta
    }
}

/// A real exponent together with the integer sheet index of the
/// multi-valued power it selects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSpec {
    exponent: f64,
    branch_index: i32,
}

impl BranchSpec {
    /// Builds a branch selection, requiring `exponent > 0`. When the
    /// exponent is a positive integer the power is single-valued and the
    /// branch index is normalized to 0.
    pub fn new(exponent: f64, branch_index: i32) -> Result<Self, InvalidExponent> {
        if !exponent.is_finite() || exponent <= 0.0 {
            return Err(InvalidExponent(exponent));
        }
        let branch_index = if is_positive_integer(exponent) {
            0
        } else {
            branch_index
        };
        Ok(Self {
            exponent,
            branch_index,
        })
    }

    /// The principal branch (`n = 0`) of `z^exponent`.
    pub fn principal(exponent: f64) -> Result<Self, InvalidExponent> {
        Self::new(exponent, 0)
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn branch_index(&self) -> i32 {
        self.branch_index
    }
}

#[inline]
pub(crate) fn is_positive_integer(x: f64) -> bool {
    x >= 1.0 && x.fract() == 0.0 && x <= u32::MAX as f64
}

/// Multi-branch power `|z|^s * exp(i * s * (Arg z + 2*pi*n))`.
///
/// `0^s = 0` for every positive exponent, by continuity of `|z|^s`; this
/// matters because every membership orbit starts at `z = 0`. Non-finite
/// inputs propagate to non-finite outputs.
pub fn branch_pow(z: Complex, branch: BranchSpec) -> Complex {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let theta = arg_unchecked(z);
    let angle = branch.exponent * (theta + TAU * f64::from(branch.branch_index));
    let magnitude = z.norm().powf(branch.exponent);
    Complex::new(magnitude * angle.cos(), magnitude * angle.sin())
}

/// Principal-branch power with an arbitrary real exponent, including
/// negative ones. Used by the solver steps, where exponents like `q` and
/// `r` are free real parameters rather than sheet selections.
///
/// `z = 0` maps to 0 for positive exponents, 1 for a zero exponent, and
/// infinity otherwise.
pub fn principal_pow(z: Complex, exponent: f64) -> Complex {
    if exponent == 0.0 {
        return Complex::new(1.0, 0.0);
    }
    if z.re == 0.0 && z.im == 0.0 {
        return if exponent > 0.0 {
            Complex::new(0.0, 0.0)
        } else {
            Complex::new(f64::INFINITY, 0.0)
        };
    }
    if is_positive_integer(exponent) {
        return int_pow(z, exponent as u32);
    }
    let theta = arg_unchecked(z);
    let angle = exponent * theta;
    let magnitude = z.norm().powf(exponent);
    Complex::new(magnitude * angle.cos(), magnitude * angle.sin())
}

/// Integer power by binary square-and-multiply.
///
/// Agrees with `branch_pow(z, {d, 0})` to better than 1e-9 relative for
/// moderate `|z|`, but avoids the polar round trip entirely, so real
/// inputs stay exactly real.
pub fn int_pow(z: Complex, d: u32) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    let mut base = z;
    let mut e = d;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    acc
}
