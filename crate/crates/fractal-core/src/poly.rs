//! Polynomials with complex coefficients, stored leading-first.
//!
//! The coefficient order matches the CLI syntax: `a_0, a_1, ..., a_p` for
//! `a_0 x^p + a_1 x^(p-1) + ... + a_p`.

use std::fmt;

use crate::complex::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    /// Fewer than two coefficients were supplied.
    TooShort,
    /// The leading coefficient is zero.
    ZeroLeadingCoefficient,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::TooShort => write!(f, "a polynomial needs at least degree 1"),
            PolyError::ZeroLeadingCoefficient => {
                write!(f, "leading coefficient a_0 must be nonzero")
            }
        }
    }
}

impl std::error::Error for PolyError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Builds a polynomial from leading-first coefficients; degree must be
    /// at least 1 and `a_0` nonzero.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self, PolyError> {
        if coeffs.len() < 2 {
            return Err(PolyError::TooShort);
        }
        if coeffs[0] == Complex::new(0.0, 0.0) {
            return Err(PolyError::ZeroLeadingCoefficient);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// The monic family `z^(p+1) - z^p + c` that ties the solver steps to
    /// the membership recurrences.
    pub fn murase_mandelbrot(p: u32, c: Complex) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); p as usize + 2];
        coeffs[0] = Complex::new(1.0, 0.0);
        coeffs[1] = Complex::new(-1.0, 0.0);
        *coeffs.last_mut().unwrap() = c;
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Leading-first coefficient slice `a_0 ..= a_p`.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex {
        self.coeffs[j]
    }

    /// True when every coefficient has a zero imaginary part, so real
    /// iterates stay real under the solver steps.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex) -> Complex {
        let mut acc = self.coeffs[0];
        for &c in &self.coeffs[1..] {
            acc = acc * x + c;
        }
        acc
    }

    /// First derivative as a polynomial.
    pub fn derivative(&self) -> Self {
        let p = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .take(p)
            .enumerate()
            .map(|(j, &a)| a * (p - j) as f64)
            .collect();
        // degree >= 1 guarantees at least one term; a degree-0 result is a
        // bare constant which `eval` still handles.
        Self { coeffs }
    }

    /// The `i`-th derivative, `1 <= i <= degree`.
    pub fn nth_derivative(&self, i: usize) -> Self {
        let mut d = self.clone();
        for _ in 0..i {
            d = d.derivative();
        }
        d
    }

    /// Evaluates the `i`-th derivative at `x` without building the
    /// intermediate polynomials, via the falling-factorial weights.
    pub fn eval_nth_derivative(&self, i: usize, x: Complex) -> Complex {
        let p = self.degree();
        if i > p {
            return Complex::new(0.0, 0.0);
        }
        let mut acc = Complex::new(0.0, 0.0);
        for (j, &a) in self.coeffs.iter().enumerate().take(p - i + 1) {
            let power = p - j; // exponent of this term
            let mut w = 1.0;
            for t in 0..i {
                w *= (power - t) as f64;
            }
            acc = acc * x + a * w;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.degree();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match p - j {
                0 => {}
                1 => write!(f, "*x")?,
                e => write!(f, "*x^{}", e)?,
            }
        }
        Ok(())
    }
}

// degree-0 derivative support: a constant polynomial is only ever produced
// internally by `derivative`, never by the public constructors.
