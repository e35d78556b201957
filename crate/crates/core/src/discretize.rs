//! Continuous-to-digital conversion with Tustin's bilinear transform,
//! `s = 2 f_l (z - 1) / (z + 1)`.
//!
//! [`tustin_horner`] is the production path. It never expands binomials;
//! instead each of the numerator and denominator goes through the same
//! sequence of cheap polynomial rewrites:
//!
//! 1. divide by `s^n` and substitute `s = 2 f_l / x`
//! 2. shift zeros: `x -> x + 1`
//! 3. reciprocal zeros: flip the coefficients
//! 4. scale zeros: `x -> x / 2`
//! 5. shift zeros: `x -> x - 1`
//! 6. read the result as a polynomial in `z`
//! 7. normalize by the leading denominator coefficient
//!
//! [`tustin_direct`] expands `(z - 1)^k (z + 1)^(n - k)` products instead and
//! is kept as an independent cross-check.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{write_descending, Polynomial};

/// Relative threshold on the leading `D[z]` coefficient.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// `H(s) = N(s) / D(s)` with `order(N) <= order(D)` and a nonzero leading
/// denominator coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousTransferFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl ContinuousTransferFunction {
    /// Coefficients in descending powers of `s`, as printed.
    pub fn new(numerator: &[f64], denominator: &[f64]) -> Result<Self> {
        if numerator.is_empty() || denominator.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient list"));
        }
        Self::from_polynomials(
            Polynomial::from_descending(numerator)?,
            Polynomial::from_descending(denominator)?,
        )
    }

    pub fn from_polynomials(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if numerator.order() > denominator.order() {
            return Err(Error::NonCausal {
                numerator: numerator.order(),
                denominator: denominator.order(),
            });
        }
        if denominator.leading() == 0.0 {
            return Err(Error::ZeroLeadingDenominator);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Denominator order `n`.
    pub fn order(&self) -> usize {
        self.denominator.order()
    }

    /// `b_m / a_n`, when the denominator has a nonzero constant term.
    pub fn dc_gain(&self) -> Option<f64> {
        let a_n = self.denominator.coeffs()[0];
        (a_n != 0.0).then(|| self.numerator.coeffs()[0] / a_n)
    }
}

/// Canonical text form, e.g. `(1)/(10s + 1)`. Parses back to identical
/// coefficients.
impl fmt::Display for ContinuousTransferFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_descending(f, self.numerator.coeffs(), "s")?;
        f.write_str(")/(")?;
        write_descending(f, self.denominator.coeffs(), "s")?;
        f.write_str(")")
    }
}

/// Difference-equation coefficients:
/// `y_0 = b_hat . [y_1 .. y_n] + a_hat . [x_0 .. x_n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigitalFilterCoefficients {
    a_hat: Vec<f64>,
    b_hat: Vec<f64>,
    loop_rate_hz: f64,
}

impl DigitalFilterCoefficients {
    pub fn new(a_hat: Vec<f64>, b_hat: Vec<f64>, loop_rate_hz: f64) -> Result<Self> {
        if a_hat.len() != b_hat.len() + 1 {
            return Err(Error::CoefficientLength {
                a_len: a_hat.len(),
                b_len: b_hat.len(),
            });
        }
        if a_hat.iter().chain(&b_hat).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("filter coefficients"));
        }
        check_rate(loop_rate_hz)?;
        Ok(Self {
            a_hat,
            b_hat,
            loop_rate_hz,
        })
    }

    /// Pass-through filter, `a_hat = [1]`.
    pub fn identity(loop_rate_hz: f64) -> Result<Self> {
        Self::new(vec![1.0], Vec::new(), loop_rate_hz)
    }

    pub fn a_hat(&self) -> &[f64] {
        &self.a_hat
    }

    pub fn b_hat(&self) -> &[f64] {
        &self.b_hat
    }

    pub fn loop_rate_hz(&self) -> f64 {
        self.loop_rate_hz
    }

    pub fn order(&self) -> usize {
        self.b_hat.len()
    }

    /// `sum(a_hat) / (1 - sum(b_hat))`; `None` for a pole at `z = 1`.
    pub fn dc_gain(&self) -> Option<f64> {
        let den = 1.0 - self.b_hat.iter().sum::<f64>();
        (den.abs() > 1e-15).then(|| self.a_hat.iter().sum::<f64>() / den)
    }

    /// Magnitudes of the z-plane poles, i.e. the roots of
    /// `z^n - b_0 z^(n-1) - ... - b_(n-1)`, from companion-matrix eigenvalues.
    pub fn pole_radii(&self) -> Vec<f64> {
        let n = self.order();
        if n == 0 {
            return Vec::new();
        }
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for (j, b) in self.b_hat.iter().enumerate() {
            companion[(0, j)] = *b;
        }
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        let mut radii: Vec<f64> = companion
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .collect();
        radii.sort_by(|a, b| b.total_cmp(a));
        radii
    }
}

fn check_rate(rate: f64) -> Result<()> {
    if rate > 0.0 && rate.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRate(rate))
    }
}

/// Intermediate polynomials of the stepwise pipeline for one side of the
/// transfer function, in the order they are produced.
#[derive(Debug, Clone, PartialEq)]
pub struct HornerStages {
    /// `F(x)`: after dividing by `s^n` and substituting `s = 2 f_l / x`.
    pub substituted: Polynomial,
    /// `F(x + 1)`
    pub shifted: Polynomial,
    /// `F(1/x + 1)`
    pub reciprocal: Polynomial,
    /// `F(2/x + 1)`
    pub scaled: Polynomial,
    /// `F(2/(x - 1) + 1)`, read directly as `F[z]`.
    pub z_domain: Polynomial,
}

/// Runs steps 1-6 on a single polynomial carried at order `n`.
pub fn horner_stages(p: &Polynomial, n: usize, loop_rate_hz: f64) -> Result<HornerStages> {
    check_rate(loop_rate_hz)?;
    let padded = p.padded(n);
    // s^(n-k) / s^n = s^-k = (x / 2f_l)^k: the s^(n-k) coefficient lands on x^k.
    let two_fl = 2.0 * loop_rate_hz;
    let mut scale = 1.0;
    let substituted = padded
        .descending()
        .into_iter()
        .map(|c| {
            let v = c / scale;
            scale *= two_fl;
            v
        })
        .collect();
    let substituted = Polynomial::from_ascending(substituted)?;
    let shifted = substituted.taylor_shift(1.0);
    let reciprocal = shifted.reversed();
    let scaled = reciprocal.scale_argument(0.5)?;
    let z_domain = scaled.taylor_shift(-1.0);
    Ok(HornerStages {
        substituted,
        shifted,
        reciprocal,
        scaled,
        z_domain,
    })
}

/// Discretizes `tf` at `loop_rate_hz` with the stepwise Horner pipeline.
pub fn tustin_horner(
    tf: &ContinuousTransferFunction,
    loop_rate_hz: f64,
) -> Result<DigitalFilterCoefficients> {
    check_rate(loop_rate_hz)?;
    let n = tf.order();
    let num = horner_stages(tf.numerator(), n, loop_rate_hz)?.z_domain;
    let den = horner_stages(tf.denominator(), n, loop_rate_hz)?.z_domain;
    normalize(&num, &den, loop_rate_hz)
}

/// Discretizes `tf` by direct substitution, expanding
/// `sum_k c_k (2 f_l)^(n-k) (z - 1)^(n-k) (z + 1)^k`.
pub fn tustin_direct(
    tf: &ContinuousTransferFunction,
    loop_rate_hz: f64,
) -> Result<DigitalFilterCoefficients> {
    check_rate(loop_rate_hz)?;
    let n = tf.order();
    let num = substitute_bilinear(tf.numerator(), n, loop_rate_hz)?;
    let den = substitute_bilinear(tf.denominator(), n, loop_rate_hz)?;
    normalize(&num, &den, loop_rate_hz)
}

/// `(z + 1)^n * p(2 f_l (z - 1) / (z + 1))` for `p` carried at order `n`.
pub fn substitute_bilinear(p: &Polynomial, n: usize, loop_rate_hz: f64) -> Result<Polynomial> {
    let zm1 = Polynomial::linear(-1.0);
    let zp1 = Polynomial::linear(1.0);
    let two_fl = 2.0 * loop_rate_hz;
    let exp = |k: usize| u32::try_from(k).map_err(|_| Error::ExponentTooLarge(u32::MAX, 64));
    let mut acc = Polynomial::zero(n);
    // ascending: coefficient of s^j
    for (j, &c) in p.padded(n).coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let term = &zm1.pow(exp(j)?)? * &zp1.pow(exp(n - j)?)?;
        acc = &acc + &term.scaled(c * two_fl.powi(j as i32));
    }
    Ok(acc)
}

/// Divides through by the leading `D[z]` coefficient and splits the result
/// into the input vector `a_hat` and the negated output vector `b_hat`.
pub fn normalize(
    num_z: &Polynomial,
    den_z: &Polynomial,
    loop_rate_hz: f64,
) -> Result<DigitalFilterCoefficients> {
    let n = den_z.order();
    let num_z = num_z.padded(n);
    if num_z.order() > n {
        return Err(Error::NonCausal {
            numerator: num_z.order(),
            denominator: n,
        });
    }
    let leading = den_z.leading();
    let max = den_z.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 || leading.is_nan() || leading.abs() < DEGENERACY_THRESHOLD * max {
        return Err(Error::DegenerateLeadingCoefficient { leading, max });
    }
    let a_hat = num_z.descending().iter().map(|c| c / leading).collect();
    let b_hat = den_z.descending()[1..]
        .iter()
        .map(|c| -c / leading)
        .collect();
    DigitalFilterCoefficients::new(a_hat, b_hat, loop_rate_hz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    fn lp_example() -> ContinuousTransferFunction {
        ContinuousTransferFunction::new(&[1.0], &[10.0, 1.0]).unwrap()
    }

    fn butter_example() -> ContinuousTransferFunction {
        ContinuousTransferFunction::new(&[2.0], &[1.0, 2.0, 2.0]).unwrap()
    }

    #[test]
    fn first_order_walkthrough() {
        let tf = lp_example();
        let num = horner_stages(tf.numerator(), 1, 0.1).unwrap();
        let den = horner_stages(tf.denominator(), 1, 0.1).unwrap();
        assert_close(&num.substituted.descending(), &[5.0, 0.0], 1e-12);
        assert_close(&den.substituted.descending(), &[5.0, 10.0], 1e-12);
        assert_close(&num.shifted.descending(), &[5.0, 5.0], 1e-12);
        assert_close(&den.shifted.descending(), &[5.0, 15.0], 1e-12);
        assert_close(&den.reciprocal.descending(), &[15.0, 5.0], 1e-12);
        assert_close(&num.scaled.descending(), &[2.5, 5.0], 1e-12);
        assert_close(&den.scaled.descending(), &[7.5, 5.0], 1e-12);
        assert_close(&num.z_domain.descending(), &[2.5, 2.5], 1e-12);
        assert_close(&den.z_domain.descending(), &[7.5, -2.5], 1e-12);
    }

    #[test]
    fn second_order_walkthrough() {
        let tf = butter_example();
        let num = horner_stages(tf.numerator(), 2, 1.0).unwrap();
        let den = horner_stages(tf.denominator(), 2, 1.0).unwrap();
        assert_close(&num.substituted.descending(), &[0.5, 0.0, 0.0], 1e-12);
        assert_close(&den.substituted.descending(), &[0.5, 1.0, 1.0], 1e-12);
        assert_close(&num.shifted.descending(), &[0.5, 1.0, 0.5], 1e-12);
        assert_close(&den.shifted.descending(), &[0.5, 2.0, 2.5], 1e-12);
        assert_close(&den.reciprocal.descending(), &[2.5, 2.0, 0.5], 1e-12);
        assert_close(&num.scaled.descending(), &[0.125, 0.5, 0.5], 1e-12);
        assert_close(&den.scaled.descending(), &[0.625, 1.0, 0.5], 1e-12);
        assert_close(&num.z_domain.descending(), &[0.125, 0.25, 0.125], 1e-12);
        assert_close(&den.z_domain.descending(), &[0.625, -0.25, 0.125], 1e-12);
    }

    #[test]
    fn boxed_results() {
        for f in [tustin_horner, tustin_direct] {
            let c = f(&lp_example(), 0.1).unwrap();
            assert_close(c.a_hat(), &[1.0 / 3.0, 1.0 / 3.0], 1e-12);
            assert_close(c.b_hat(), &[1.0 / 3.0], 1e-12);

            let c = f(&butter_example(), 1.0).unwrap();
            assert_close(c.a_hat(), &[0.2, 0.4, 0.2], 1e-12);
            assert_close(c.b_hat(), &[0.4, -0.2], 1e-12);
        }
    }

    #[test]
    fn direct_substitution_before_normalizing() {
        let tf = lp_example();
        let n = substitute_bilinear(tf.numerator(), 1, 0.1).unwrap();
        let d = substitute_bilinear(tf.denominator(), 1, 0.1).unwrap();
        assert_close(&n.descending(), &[1.0, 1.0], 1e-12);
        assert_close(&d.descending(), &[3.0, -1.0], 1e-12);

        let tf = butter_example();
        let n = substitute_bilinear(tf.numerator(), 2, 1.0).unwrap();
        let d = substitute_bilinear(tf.denominator(), 2, 1.0).unwrap();
        assert_close(&n.descending(), &[2.0, 4.0, 2.0], 1e-12);
        assert_close(&d.descending(), &[10.0, -4.0, 2.0], 1e-12);
    }

    #[test]
    fn unity_transfer_function() {
        let tf = ContinuousTransferFunction::new(&[1.0], &[1.0]).unwrap();
        for f in [tustin_horner, tustin_direct] {
            let c = f(&tf, 123.0).unwrap();
            assert_eq!(c.a_hat(), &[1.0]);
            assert!(c.b_hat().is_empty());
        }
    }

    #[test]
    fn normalize_examples() {
        let n = Polynomial::from_descending(&[2.5, 2.5]).unwrap();
        let d = Polynomial::from_descending(&[7.5, -2.5]).unwrap();
        let c = normalize(&n, &d, 0.1).unwrap();
        assert_close(c.a_hat(), &[1.0 / 3.0, 1.0 / 3.0], 1e-15);
        assert_close(c.b_hat(), &[1.0 / 3.0], 1e-15);

        let n = Polynomial::from_descending(&[0.125, 0.25, 0.125]).unwrap();
        let d = Polynomial::from_descending(&[0.625, -0.25, 0.125]).unwrap();
        let c = normalize(&n, &d, 1.0).unwrap();
        assert_close(c.a_hat(), &[0.2, 0.4, 0.2], 1e-15);
        assert_close(c.b_hat(), &[0.4, -0.2], 1e-15);

        // N = D: identity in steady state
        let c = normalize(&d, &d, 1.0).unwrap();
        assert_close(c.a_hat(), &[1.0, -0.4, 0.2], 1e-15);
        assert_close(c.b_hat(), &[0.4, -0.2], 1e-15);
        assert!((c.dc_gain().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_causal() {
        let err = ContinuousTransferFunction::new(&[1.0, 0.0], &[1.0]).unwrap_err();
        assert_eq!(
            err,
            Error::NonCausal {
                numerator: 1,
                denominator: 0
            }
        );
    }

    #[test]
    fn rejects_bad_rate() {
        assert_eq!(
            tustin_horner(&lp_example(), 0.0),
            Err(Error::NonPositiveRate(0.0))
        );
        assert!(tustin_direct(&lp_example(), f64::NAN).is_err());
    }

    #[test]
    fn degenerate_when_denominator_vanishes_at_two_fl() {
        // D(s) = s - 2 vanishes at s = 2 f_l for f_l = 1
        let tf = ContinuousTransferFunction::new(&[1.0], &[1.0, -2.0]).unwrap();
        for f in [tustin_horner, tustin_direct] {
            assert!(matches!(
                f(&tf, 1.0),
                Err(Error::DegenerateLeadingCoefficient { .. })
            ));
        }
    }

    #[test]
    fn coefficient_lengths_checked() {
        assert!(DigitalFilterCoefficients::new(vec![1.0], vec![0.5], 1.0).is_err());
        assert!(DigitalFilterCoefficients::new(vec![1.0, 1.0], vec![0.5], -1.0).is_err());
    }

    #[test]
    fn pole_radii_of_second_order() {
        // poles of z^2 - 0.4z + 0.2: |z| = sqrt(0.2)
        let c = DigitalFilterCoefficients::new(vec![0.2, 0.4, 0.2], vec![0.4, -0.2], 1.0).unwrap();
        for r in c.pole_radii() {
            assert!((r - 0.2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(lp_example().to_string(), "(1)/(10s + 1)");
        assert_eq!(butter_example().to_string(), "(2)/(s^2 + 2s + 2)");
    }
}
