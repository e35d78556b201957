//! Ready-made continuous transfer functions for common filter and controller
//! families. All frequencies are in rad/s.

use std::f64::consts::{PI, SQRT_2};

use crate::discretize::ContinuousTransferFunction;
use crate::error::{Error, Result};

fn positive(v: f64, what: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(what))
    }
}

/// First-order unity-gain low-pass, `1 / (s / omega0 + 1)`.
///
/// Some write this as `1 / ((1/tau) s + 1)` with `tau` itself a corner
/// frequency in rad/s; `omega0` is that same value.
pub fn lowpass1(omega0: f64) -> Result<ContinuousTransferFunction> {
    positive(omega0, "lowpass corner frequency")?;
    ContinuousTransferFunction::new(&[1.0], &[1.0 / omega0, 1.0])
}

/// Second-order Butterworth low-pass,
/// `omega_c^2 / (s^2 + sqrt(2) omega_c s + omega_c^2)`.
pub fn butterworth2(omega_c: f64) -> Result<ContinuousTransferFunction> {
    positive(omega_c, "butterworth cutoff")?;
    let w2 = omega_c * omega_c;
    ContinuousTransferFunction::new(&[w2], &[1.0, SQRT_2 * omega_c, w2])
}

/// Notch, `(s^2 + omega_n^2) / (s^2 + (omega_n / q) s + omega_n^2)`.
pub fn notch(omega_n: f64, q: f64) -> Result<ContinuousTransferFunction> {
    positive(omega_n, "notch frequency")?;
    positive(q, "notch quality factor")?;
    let w2 = omega_n * omega_n;
    ContinuousTransferFunction::new(&[1.0, 0.0, w2], &[1.0, omega_n / q, w2])
}

/// PID with a first-order roll-off on the derivative,
/// `Kp + Ki/s + Kd tau s / (s + tau)`, over the common denominator
/// `s^2 + tau s`. The constant denominator term is kept as an explicit zero.
pub fn pid(kp: f64, ki: f64, kd: f64, tau: f64) -> Result<ContinuousTransferFunction> {
    positive(tau, "pid derivative filter tau")?;
    if ![kp, ki, kd].iter().all(|g| g.is_finite()) {
        return Err(Error::InvalidParameter("pid gains"));
    }
    ContinuousTransferFunction::new(&[kp + kd * tau, kp * tau + ki, ki * tau], &[1.0, tau, 0.0])
}

/// Lead-lag compensator, `K (s + z) / (s + p)`.
pub fn leadlag(gain: f64, zero: f64, pole: f64) -> Result<ContinuousTransferFunction> {
    positive(pole, "lead-lag pole")?;
    if gain == 0.0 || !gain.is_finite() || !zero.is_finite() {
        return Err(Error::InvalidParameter("lead-lag gain or zero"));
    }
    ContinuousTransferFunction::new(&[gain, gain * zero], &[1.0, pole])
}

/// Fixed third-order example filter.
pub fn multiorder_example() -> ContinuousTransferFunction {
    ContinuousTransferFunction::new(
        &[196.92, 21033.79, 427573.90, 18317222.93],
        &[1.0, 382.16, 60851.34, 3875784.59],
    )
    .expect("constant transfer function is valid")
}

/// Converts Hz to rad/s.
pub fn hz(f: f64) -> f64 {
    2.0 * PI * f
}

/// A named catalog filter together with the parameters it was built from.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub transfer_function: ContinuousTransferFunction,
}

/// Every reference filter at its published parameters.
pub fn reference_filters() -> Vec<CatalogEntry> {
    let entry = |name, tf: Result<ContinuousTransferFunction>| CatalogEntry {
        name,
        transfer_function: tf.expect("reference parameters are valid"),
    };
    vec![
        entry("lowpass1", lowpass1(hz(10.0))),
        entry("butterworth2", butterworth2(hz(10.0))),
        entry("notch", notch(hz(60.0), 5.0)),
        entry("multiorder", Ok(multiorder_example())),
        entry("pid", pid(15.0, 2.0, 0.25, 0.0035)),
        entry("leadlag", leadlag(10.0, hz(1.0), hz(10.0))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn at(tf: &ContinuousTransferFunction, s: Complex64) -> Complex64 {
        tf.numerator().eval(s) / tf.denominator().eval(s)
    }

    #[test]
    fn lowpass_matches_printed_form() {
        let tf = lowpass1(0.1).unwrap();
        assert_eq!(tf.numerator().descending(), [1.0]);
        assert_eq!(tf.denominator().descending(), [10.0, 1.0]);
        assert_eq!(tf.dc_gain(), Some(1.0));
    }

    #[test]
    fn butterworth_sqrt2_example() {
        let tf = butterworth2(SQRT_2).unwrap();
        let d = tf.denominator().descending();
        assert!((tf.numerator().descending()[0] - 2.0).abs() < 1e-15);
        assert!((d[1] - 2.0).abs() < 1e-15 && (d[2] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn butterworth_half_power_at_cutoff() {
        let wc = hz(10.0);
        let h = at(&butterworth2(wc).unwrap(), Complex64::new(0.0, wc));
        assert!((h.norm() - SQRT_2.recip()).abs() < 1e-14);
    }

    #[test]
    fn notch_gain_and_null() {
        let wn = hz(60.0);
        let tf = notch(wn, 5.0).unwrap();
        assert_eq!(tf.dc_gain(), Some(1.0));
        assert!(at(&tf, Complex64::new(0.0, wn)).norm() < 1e-12);
    }

    #[test]
    fn pid_collapses_to_gain() {
        let tf = pid(3.0, 0.0, 0.0, 0.5).unwrap();
        for w in [0.1, 1.0, 10.0] {
            let h = at(&tf, Complex64::new(0.0, w));
            assert!((h - 3.0).norm() < 1e-12);
        }
        assert_eq!(tf.denominator().descending(), [1.0, 0.5, 0.0]);
    }

    #[test]
    fn leadlag_limits() {
        let tf = leadlag(1.0, 3.0, 3.0).unwrap();
        assert!((at(&tf, Complex64::new(0.0, 7.0)) - 1.0).norm() < 1e-15);
        let tf = leadlag(10.0, hz(1.0), hz(10.0)).unwrap();
        assert!((tf.dc_gain().unwrap() - 1.0).abs() < 1e-15);
        let h = at(&tf, Complex64::new(0.0, 1e9));
        assert!((h.norm() - 10.0).abs() < 1e-6);
    }

    #[test]
    fn multiorder_dc_gain() {
        let tf = multiorder_example();
        assert_eq!(tf.order(), 3);
        assert!((tf.dc_gain().unwrap() - 4.7261).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(lowpass1(0.0).is_err());
        assert!(notch(1.0, -1.0).is_err());
        assert!(pid(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(leadlag(0.0, 1.0, 1.0).is_err());
    }
}
