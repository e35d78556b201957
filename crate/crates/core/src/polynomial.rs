//! Dense real polynomials with a fixed declared order.
//!
//! Coefficients are stored in ascending powers (`coeffs[k]` multiplies `x^k`)
//! and always padded to `order + 1` entries. The declared order is never
//! trimmed: a numerator of lower degree than its denominator is carried as a
//! full-order object with zero high-order coefficients, which is what the
//! reverse step of the bilinear pipeline relies on.

use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest exponent accepted by [`Polynomial::pow`].
pub const MAX_POWER: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending-power coefficients. The declared
    /// order is `coeffs.len() - 1`; an empty slice is the zero constant.
    pub fn from_ascending(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Ok(Self { coeffs })
    }

    /// Builds a polynomial from descending-power coefficients, the order
    /// used in printed transfer functions.
    pub fn from_descending(coeffs: &[f64]) -> Result<Self> {
        Self::from_ascending(coeffs.iter().rev().copied().collect())
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The zero polynomial carried at the given declared order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    /// `x + c`
    pub fn linear(c: f64) -> Self {
        Self {
            coeffs: vec![c, 1.0],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending-power view.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<f64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// Coefficient of `x^order`.
    pub fn leading(&self) -> f64 {
        self.coeffs[self.order()]
    }

    /// Raises the declared order by appending zero high-order coefficients.
    /// Orders below the current one are ignored; nothing is ever truncated.
    pub fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if order + 1 > coeffs.len() {
            coeffs.resize(order + 1, 0.0);
        }
        Self { coeffs }
    }

    /// Returns `q(x) = p(x + c)`.
    ///
    /// Runs `order` passes of synthetic division by `(x - c)`; each pass
    /// peels off one coefficient of the shifted polynomial, exactly like the
    /// hand tableau.
    pub fn taylor_shift(&self, c: f64) -> Self {
        let mut a = self.coeffs.clone();
        let n = self.order();
        for pass in 0..n {
            for k in (pass..n).rev() {
                a[k] += c * a[k + 1];
            }
        }
        Self { coeffs: a }
    }

    /// Returns `x^order * p(1/x)`: the coefficient sequence reversed over the
    /// full padded length.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { coeffs }
    }

    /// Returns `q(x) = p(c * x)`.
    pub fn scale_argument(&self, c: f64) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::ZeroScale);
        }
        let mut factor = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let v = a * factor;
                factor *= c;
                v
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// `self^k` with `k <= MAX_POWER`.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if k > MAX_POWER {
            return Err(Error::ExponentTooLarge(k, MAX_POWER));
        }
        let mut acc = Self::constant(1.0);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Nested evaluation at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial { coeffs }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }
    }
}

/// Descending-power rendering in the variable `x`, e.g. `0.5x^2 + 2x + 2.5`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_descending(f, &self.coeffs, "x")
    }
}

pub(crate) fn write_descending(
    f: &mut dyn fmt::Write,
    ascending: &[f64],
    var: &str,
) -> fmt::Result {
    let n = ascending.len() - 1;
    for (i, &c) in ascending.iter().enumerate().rev() {
        // the leading term stays even when zero: it carries the order
        if c == 0.0 && i != n {
            continue;
        }
        let sign_negative = c.is_sign_negative();
        if i == n {
            if sign_negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if sign_negative { " - " } else { " + " })?;
        }
        if i == 0 || c.abs() != 1.0 {
            write!(f, "{}", c.abs())?;
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    Ok(())
}
