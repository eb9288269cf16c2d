//! Escape-time orbit classification.
//!
//! An orbit starts at `z_0 = 0` and runs the chosen recurrence until its
//! modulus passes the escape radius, a step fails (pole, domain exit,
//! overflow), or the iteration budget is spent. `max_iter` caps the orbit
//! length including `z_0`, so every reported iteration index is strictly
//! below it.

use std::fmt;

use crate::complex::{is_overflowed, Complex};
use crate::recurrence::{Recurrence, StepError};

/// Why an orbit was cut short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// A step denominator vanished.
    Pole,
    /// A component passed the overflow limit or went non-finite.
    Overflow,
    /// A real-only method left its domain (negative radicand or a
    /// non-real input).
    Domain,
}

impl From<StepError> for InvalidReason {
    fn from(e: StepError) -> Self {
        match e {
            StepError::Pole => InvalidReason::Pole,
            StepError::Domain => InvalidReason::Domain,
        }
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::Pole => write!(f, "pole"),
            InvalidReason::Overflow => write!(f, "overflow"),
            InvalidReason::Domain => write!(f, "domain"),
        }
    }
}

/// Classification of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitStatus {
    /// Never escaped within the budget.
    Bounded,
    /// First modulus above the escape radius at orbit index `at_iter`.
    Escaped { at_iter: u32 },
    /// Orbit left the recurrence's domain at index `at_iter`.
    Invalid { reason: InvalidReason, at_iter: u32 },
}

impl OrbitStatus {
    /// Membership in the bounded set; poles and overflow count as out.
    pub fn is_bounded(&self) -> bool {
        matches!(self, OrbitStatus::Bounded)
    }

    /// Iteration index for rendering; bounded orbits have none.
    pub fn iteration(&self) -> Option<u32> {
        match self {
            OrbitStatus::Bounded => None,
            OrbitStatus::Escaped { at_iter } | OrbitStatus::Invalid { at_iter, .. } => {
                Some(*at_iter)
            }
        }
    }
}

/// One classified orbit, optionally with the full trajectory.
#[derive(Debug, Clone)]
pub struct OrbitOutcome {
    pub status: OrbitStatus,
    /// Last successfully produced iterate.
    pub last_value: Complex,
    pub trace: Option<Vec<Complex>>,
}

/// Iterates the recurrence from `z_0 = 0` at parameter `c`.
///
/// The orbit holds at most `max_iter` values (`z_0` through
/// `z_{max_iter-1}`); escape and invalidity indices therefore satisfy
/// `at_iter < max_iter`. Escape is declared at the first index whose
/// modulus strictly exceeds `escape_radius`.
pub fn classify_orbit(
    c: Complex,
    spec: &Recurrence,
    escape_radius: f64,
    max_iter: u32,
    keep_trace: bool,
) -> OrbitOutcome {
    debug_assert!(escape_radius >= 1.0);
    debug_assert!(max_iter >= 1);
    let mut z = Complex::new(0.0, 0.0);
    let mut trace = if keep_trace { Some(vec![z]) } else { None };

    if spec.is_real_only() && c.im != 0.0 {
        return OrbitOutcome {
            status: OrbitStatus::Invalid {
                reason: InvalidReason::Domain,
                at_iter: 0,
            },
            last_value: z,
            trace,
        };
    }

    for k in 1..max_iter {
        let next = match spec.step(z, c) {
            Ok(v) => v,
            Err(e) => {
                return OrbitOutcome {
                    status: OrbitStatus::Invalid {
                        reason: e.into(),
                        at_iter: k,
                    },
                    last_value: z,
                    trace,
                };
            }
        };
        if is_overflowed(next) {
            return OrbitOutcome {
                status: OrbitStatus::Invalid {
                    reason: InvalidReason::Overflow,
                    at_iter: k,
                },
                last_value: z,
                trace,
            };
        }
        if let Some(t) = trace.as_mut() {
            t.push(next);
        }
        z = next;
        if z.norm() > escape_radius {
            return OrbitOutcome {
                status: OrbitStatus::Escaped { at_iter: k },
                last_value: z,
                trace,
            };
        }
    }
    OrbitOutcome {
        status: OrbitStatus::Bounded,
        last_value: z,
        trace,
    }
}
