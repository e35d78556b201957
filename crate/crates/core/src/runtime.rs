//! Sample-by-sample execution of the difference equation
//!
//! ```text
//! y_0 = b_0 y_1 + ... + b_(n-1) y_n + a_0 x_0 + a_1 x_1 + ... + a_n x_n
//! ```
//!
//! A [`Filter`] must be ticked at the rate its coefficients were designed
//! for; nothing here can detect a drifting loop, but [`process`] refuses a
//! series whose sample rate disagrees with the design rate.
//!
//! On the first tick both histories are filled with the first input
//! (unless disabled with [`Filter::with_startup_fill`]). For a unity-DC
//! filter this makes a constant input produce that same constant from the
//! very first output, instead of a large start-up transient.
//!
//! Subnormal inputs and outputs are flushed to zero before entering the
//! history, so the per-tick cost stays flat as a response decays.

use std::sync::Arc;

use crate::discretize::DigitalFilterCoefficients;
use crate::error::{Error, Result};
use crate::signals::TimeSeries;

/// Relative tolerance when matching a series rate to a design rate.
pub const RATE_TOLERANCE: f64 = 1e-9;

/// Fixed-length history, most recent first, backed by a ring buffer.
#[derive(Debug, Clone)]
struct History {
    buf: Vec<f64>,
    head: usize,
}

impl History {
    fn new(len: usize) -> Self {
        Self {
            buf: vec![0.0; len],
            head: 0,
        }
    }

    fn fill(&mut self, v: f64) {
        self.buf.fill(v);
        self.head = 0;
    }

    /// Discards the oldest entry and installs `v` as the newest.
    fn push(&mut self, v: f64) {
        let len = self.buf.len();
        if len == 0 {
            return;
        }
        self.head = if self.head == 0 {
            len - 1
        } else {
            self.head - 1
        };
        self.buf[self.head] = v;
    }

    /// `sum_k w[k] * h[k]` with `h[0]` the newest entry.
    fn dot(&self, w: &[f64]) -> f64 {
        // buf[head..] holds the newest entries, buf[..head] the oldest
        let (oldest, newest) = self.buf.split_at(self.head);
        let split = newest.len();
        let a: f64 = newest.iter().zip(&w[..split]).map(|(h, c)| h * c).sum();
        let b: f64 = oldest.iter().zip(&w[split..]).map(|(h, c)| h * c).sum();
        a + b
    }

    fn to_vec(&self) -> Vec<f64> {
        let (oldest, newest) = self.buf.split_at(self.head);
        newest.iter().chain(oldest).copied().collect()
    }
}

fn flush_subnormal(v: f64) -> f64 {
    if v.is_subnormal() {
        0.0
    } else {
        v
    }
}

/// Running filter state. Single owner; move it between threads freely, but
/// tick it from one place at a time.
#[derive(Debug, Clone)]
pub struct Filter {
    coeffs: Arc<DigitalFilterCoefficients>,
    x_hist: History,
    y_hist: History,
    first_tick: bool,
    startup_fill: bool,
}

impl Filter {
    pub fn new(coeffs: impl Into<Arc<DigitalFilterCoefficients>>) -> Self {
        let coeffs = coeffs.into();
        let n = coeffs.order();
        Self {
            coeffs,
            x_hist: History::new(n + 1),
            y_hist: History::new(n),
            first_tick: true,
            startup_fill: true,
        }
    }

    /// Enables or disables filling the histories with the first input.
    pub fn with_startup_fill(mut self, enabled: bool) -> Self {
        self.startup_fill = enabled;
        self
    }

    pub fn coefficients(&self) -> &DigitalFilterCoefficients {
        &self.coeffs
    }

    pub fn first_tick(&self) -> bool {
        self.first_tick
    }

    /// Input history `[x_0, x_1, .., x_n]`, newest first.
    pub fn input_history(&self) -> Vec<f64> {
        self.x_hist.to_vec()
    }

    /// Output history `[y_1, .., y_n]`, newest first.
    pub fn output_history(&self) -> Vec<f64> {
        self.y_hist.to_vec()
    }

    /// Back to the freshly constructed state.
    pub fn reset(&mut self) {
        self.x_hist.fill(0.0);
        self.y_hist.fill(0.0);
        self.first_tick = true;
    }

    /// Advances one loop iteration with input `x0` and returns `y_0`.
    pub fn tick(&mut self, x0: f64) -> Result<f64> {
        if !x0.is_finite() {
            return Err(Error::NonFinite("filter input"));
        }
        let x0 = flush_subnormal(x0);
        if self.first_tick {
            if self.startup_fill {
                self.x_hist.fill(x0);
                self.y_hist.fill(x0);
            }
            self.first_tick = false;
        }
        self.x_hist.push(x0);
        let y0 = self.y_hist.dot(self.coeffs.b_hat()) + self.x_hist.dot(self.coeffs.a_hat());
        self.y_hist.push(flush_subnormal(y0));
        Ok(y0)
    }

    /// Ticks through `input`, which must be sampled at the design rate.
    pub fn process_series(&mut self, input: &TimeSeries) -> Result<TimeSeries> {
        check_rate(input.sample_rate, self.coeffs.loop_rate_hz())?;
        let samples = input
            .samples
            .iter()
            .map(|&x| self.tick(x))
            .collect::<Result<Vec<_>>>()?;
        TimeSeries::with_start(input.sample_rate, input.t0, samples)
    }
}

pub fn check_rate(series: f64, design: f64) -> Result<()> {
    if (series - design).abs() <= RATE_TOLERANCE * design.abs() {
        Ok(())
    } else {
        Err(Error::RateMismatch { series, design })
    }
}

/// Runs a fresh filter over `input`.
pub fn process(coeffs: &DigitalFilterCoefficients, input: &TimeSeries) -> Result<TimeSeries> {
    Filter::new(coeffs.clone()).process_series(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp() -> DigitalFilterCoefficients {
        let third = 1.0 / 3.0;
        DigitalFilterCoefficients::new(vec![third, third], vec![third], 0.1).unwrap()
    }

    #[test]
    fn construction() {
        let c = DigitalFilterCoefficients::new(vec![0.2, 0.4, 0.2], vec![0.4, -0.2], 1.0).unwrap();
        let f = Filter::new(c);
        assert_eq!(f.input_history(), [0.0; 3]);
        assert_eq!(f.output_history(), [0.0; 2]);
        assert!(f.first_tick());

        let f = Filter::new(DigitalFilterCoefficients::identity(1.0).unwrap());
        assert_eq!(f.input_history(), [0.0]);
        assert!(f.output_history().is_empty());

        let f = Filter::new(lp());
        assert_eq!((f.input_history().len(), f.output_history().len()), (2, 1));
    }

    #[test]
    fn first_tick_fills_history() {
        let mut f = Filter::new(lp());
        let y = f.tick(5.0).unwrap();
        assert!((y - 5.0).abs() < 1e-15);
        assert!(!f.first_tick());
        let y = f.tick(8.0).unwrap();
        // (1/3) 5 + (1/3) 8 + (1/3) 5
        assert!((y - 6.0).abs() < 1e-14);
        assert_eq!(f.input_history(), [8.0, 5.0]);
    }

    #[test]
    fn without_startup_fill() {
        let mut f = Filter::new(lp()).with_startup_fill(false);
        let y = f.tick(5.0).unwrap();
        assert!((y - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_passes_through() {
        let mut f = Filter::new(DigitalFilterCoefficients::identity(1.0).unwrap());
        for x in [1.0, -2.0, 3.5, 0.0] {
            assert_eq!(f.tick(x).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_finite_without_mutating() {
        let mut f = Filter::new(lp());
        assert!(f.tick(f64::NAN).is_err());
        assert!(f.first_tick());
        f.tick(1.0).unwrap();
        let before = f.output_history();
        assert!(f.tick(f64::INFINITY).is_err());
        assert_eq!(f.output_history(), before);
    }

    #[test]
    fn reset_restores_fresh_state() {
        let mut f = Filter::new(lp());
        f.tick(3.0).unwrap();
        f.tick(4.0).unwrap();
        f.reset();
        assert!(f.first_tick());
        assert_eq!(f.input_history(), [0.0, 0.0]);
        assert!((f.tick(5.0).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn subnormals_flushed() {
        let mut f = Filter::new(lp()).with_startup_fill(false);
        f.tick(f64::MIN_POSITIVE / 4.0).unwrap();
        assert_eq!(f.input_history(), [0.0, 0.0]);
    }

    #[test]
    fn rate_guard() {
        let x = TimeSeries::new(1000.0, vec![1.0; 4]).unwrap();
        assert!(matches!(
            process(&lp(), &x),
            Err(Error::RateMismatch { .. })
        ));
        let id = DigitalFilterCoefficients::identity(1000.0).unwrap();
        assert_eq!(process(&id, &x).unwrap(), x);
    }

    #[test]
    fn ring_buffer_order() {
        let mut h = History::new(3);
        for v in [1.0, 2.0, 3.0, 4.0] {
            h.push(v);
        }
        assert_eq!(h.to_vec(), [4.0, 3.0, 2.0]);
        assert_eq!(h.dot(&[1.0, 10.0, 100.0]), 4.0 + 30.0 + 200.0);
    }
}
