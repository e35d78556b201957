//! Excitation signals: chirps generated with a per-sample rotation, plus
//! plain offset sinusoids.
//!
//! The chirp oscillator keeps a `(cos, sin)` pair and rotates it by
//! `omega_c(t_i) * dt` each sample, so no `sin` of a large accumulated phase
//! is ever taken. The instantaneous frequency is sampled at the start of
//! each step (`t = i * dt`) and the pair starts at `(1, 0)`, so every chirp
//! begins at a zero crossing.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest series length any generator will produce.
pub const MAX_SAMPLES: f64 = 1e9;

/// Uniformly sampled real signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub sample_rate: f64,
    pub t0: f64,
    pub samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(sample_rate: f64, samples: Vec<f64>) -> Result<Self> {
        Self::with_start(sample_rate, 0.0, samples)
    }

    pub fn with_start(sample_rate: f64, t0: f64, samples: Vec<f64>) -> Result<Self> {
        if !(sample_rate > 0.0 && sample_rate.is_finite()) {
            return Err(Error::NonPositiveRate(sample_rate));
        }
        if !t0.is_finite() || samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("time series"));
        }
        Ok(Self {
            sample_rate,
            t0,
            samples,
        })
    }

    pub fn dt(&self) -> f64 {
        self.sample_rate.recip()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 / self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChirpKind {
    Linear,
    Exponential,
}

/// Sweep parameters. Frequencies are in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpSpec {
    pub kind: ChirpKind,
    pub omega_min: f64,
    pub omega_max: f64,
    pub duration: f64,
    pub amplitude: f64,
    pub sample_rate: f64,
}

impl ChirpSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.omega_min,
            self.omega_max,
            self.duration,
            self.amplitude,
            self.sample_rate,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidChirp("parameters must be finite"));
        }
        if self.omega_min <= 0.0 {
            return Err(Error::InvalidChirp("omega_min must be positive"));
        }
        if self.omega_max <= self.omega_min {
            return Err(Error::InvalidChirp("omega_max must exceed omega_min"));
        }
        if self.duration <= 0.0 {
            return Err(Error::InvalidChirp("duration must be positive"));
        }
        if self.sample_rate <= 0.0 {
            return Err(Error::NonPositiveRate(self.sample_rate));
        }
        Ok(())
    }

    /// `omega_c(t)` in rad/s for `0 <= t <= T`.
    pub fn instantaneous_frequency(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.duration).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                duration: self.duration,
            });
        }
        Ok(self.omega_at(t))
    }

    fn omega_at(&self, t: f64) -> f64 {
        if t == self.duration {
            return self.omega_max;
        }
        let frac = t / self.duration;
        match self.kind {
            ChirpKind::Linear => {
                (self.omega_max - self.omega_min) / self.duration * t + self.omega_min
            }
            ChirpKind::Exponential => self.omega_min * (self.omega_max / self.omega_min).powf(frac),
        }
    }

    /// Number of samples covering `[0, T]`, both ends included.
    pub fn sample_count(&self) -> Result<usize> {
        sample_count(self.duration, self.sample_rate)
    }
}

fn sample_count(duration: f64, rate: f64) -> Result<usize> {
    let n = (duration * rate * (1.0 + 1e-12)).floor() + 1.0;
    if n.is_nan() || n > MAX_SAMPLES {
        return Err(Error::SampleCountOverflow(n));
    }
    Ok(n as usize)
}

/// One step of the chirp oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpSample {
    pub index: usize,
    pub t: f64,
    /// Instantaneous frequency at `t`, rad/s.
    pub omega: f64,
    /// Running sum of `omega * dt` over the previous steps.
    pub phase: f64,
    pub cos: f64,
    pub sin: f64,
    /// `A * sin`
    pub value: f64,
}

/// Iterator over chirp samples.
#[derive(Debug, Clone)]
pub struct ChirpOscillator {
    spec: ChirpSpec,
    dt: f64,
    len: usize,
    index: usize,
    phase: f64,
    cos: f64,
    sin: f64,
}

impl ChirpOscillator {
    pub fn new(spec: ChirpSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            spec,
            dt: spec.sample_rate.recip(),
            len: spec.sample_count()?,
            index: 0,
            phase: 0.0,
            cos: 1.0,
            sin: 0.0,
        })
    }
}

impl Iterator for ChirpOscillator {
    type Item = ChirpSample;

    fn next(&mut self) -> Option<ChirpSample> {
        if self.index >= self.len {
            return None;
        }
        let t = (self.index as f64 * self.dt).min(self.spec.duration);
        let omega = self.spec.omega_at(t);
        let out = ChirpSample {
            index: self.index,
            t,
            omega,
            phase: self.phase,
            cos: self.cos,
            sin: self.sin,
            value: self.spec.amplitude * self.sin,
        };
        let step = omega * self.dt;
        let (s, c) = step.sin_cos();
        let cos = c * self.cos - s * self.sin;
        let sin = s * self.cos + c * self.sin;
        self.cos = cos;
        self.sin = sin;
        self.phase += step;
        self.index += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.len - self.index;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for ChirpOscillator {}

/// A generated chirp and the phase it was generated with.
#[derive(Debug, Clone)]
pub struct ChirpTrace {
    pub series: TimeSeries,
    pub phase: Vec<f64>,
    pub omega: Vec<f64>,
}

pub fn generate_chirp(spec: &ChirpSpec) -> Result<TimeSeries> {
    let samples = ChirpOscillator::new(*spec)?.map(|s| s.value).collect();
    TimeSeries::new(spec.sample_rate, samples)
}

/// Like [`generate_chirp`] but also returns the accumulated phase and
/// instantaneous frequency of every sample, for demodulation.
pub fn generate_chirp_traced(spec: &ChirpSpec) -> Result<ChirpTrace> {
    let osc = ChirpOscillator::new(*spec)?;
    let n = osc.len();
    let mut samples = Vec::with_capacity(n);
    let mut phase = Vec::with_capacity(n);
    let mut omega = Vec::with_capacity(n);
    for s in osc {
        samples.push(s.value);
        phase.push(s.phase);
        omega.push(s.omega);
    }
    Ok(ChirpTrace {
        series: TimeSeries::new(spec.sample_rate, samples)?,
        phase,
        omega,
    })
}

/// `amplitude * sin(2 pi freq t) + offset` sampled over `[0, duration]`.
pub fn generate_sine(
    freq_hz: f64,
    amplitude: f64,
    offset: f64,
    duration: f64,
    sample_rate: f64,
) -> Result<TimeSeries> {
    if !(sample_rate > 0.0 && sample_rate.is_finite()) {
        return Err(Error::NonPositiveRate(sample_rate));
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::InvalidParameter("sine duration must be positive"));
    }
    if ![freq_hz, amplitude, offset].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("sine parameters"));
    }
    let n = sample_count(duration, sample_rate)?;
    let w = 2.0 * PI * freq_hz / sample_rate;
    let samples = (0..n)
        .map(|i| amplitude * (w * i as f64).sin() + offset)
        .collect();
    TimeSeries::new(sample_rate, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ChirpKind) -> ChirpSpec {
        ChirpSpec {
            kind,
            omega_min: 2.0 * PI * 0.01,
            omega_max: 2.0 * PI * 2.5,
            duration: 10.0,
            amplitude: 1.0,
            sample_rate: 1000.0,
        }
    }

    #[test]
    fn endpoints() {
        for kind in [ChirpKind::Linear, ChirpKind::Exponential] {
            let s = spec(kind);
            assert_eq!(s.instantaneous_frequency(0.0).unwrap(), s.omega_min);
            assert_eq!(s.instantaneous_frequency(s.duration).unwrap(), s.omega_max);
            assert!(s.instantaneous_frequency(-1e-9).is_err());
            assert!(s.instantaneous_frequency(10.1).is_err());
        }
    }

    #[test]
    fn exponential_midpoint_is_geometric_mean() {
        let s = spec(ChirpKind::Exponential);
        let mid = s.instantaneous_frequency(5.0).unwrap();
        assert!((mid - (s.omega_min * s.omega_max).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn waveform_shape() {
        for kind in [ChirpKind::Linear, ChirpKind::Exponential] {
            let x = generate_chirp(&spec(kind)).unwrap();
            assert_eq!(x.len(), 10_001);
            assert_eq!(x.samples[0], 0.0);
            let peak = x.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(peak <= 1.0 + 1e-12 && peak > 0.99);
        }
    }

    #[test]
    fn zero_amplitude() {
        let mut s = spec(ChirpKind::Linear);
        s.amplitude = 0.0;
        assert!(generate_chirp(&s)
            .unwrap()
            .samples
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn near_degenerate_sweep_is_a_sine() {
        let w = 2.0 * PI * 3.0;
        let s = ChirpSpec {
            kind: ChirpKind::Linear,
            omega_min: w,
            omega_max: w * (1.0 + 1e-12),
            duration: 5.0,
            amplitude: 1.0,
            sample_rate: 1000.0,
        };
        let x = generate_chirp(&s).unwrap();
        for (i, v) in x.samples.iter().enumerate() {
            let t = i as f64 / 1000.0;
            assert!((v - (w * t).sin()).abs() < 1e-6, "sample {i}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let mut s = spec(ChirpKind::Exponential);
        s.omega_min = 0.0;
        assert!(s.validate().is_err());
        let mut s = spec(ChirpKind::Exponential);
        s.omega_max = s.omega_min;
        assert!(s.validate().is_err());
        let mut s = spec(ChirpKind::Linear);
        s.duration = 1e12;
        assert!(matches!(
            generate_chirp(&s),
            Err(Error::SampleCountOverflow(_))
        ));
    }

    #[test]
    fn offset_sine() {
        let x = generate_sine(100.0, 1.0, 5.0, 0.1, 1000.0).unwrap();
        assert_eq!(x.samples[0], 5.0);

        let x = generate_sine(10.0, 0.0, 2.5, 1.0, 100.0).unwrap();
        assert!(x.samples.iter().all(|&v| v == 2.5));

        let x = generate_sine(250.0, 1.0, 0.0, 0.1, 1000.0).unwrap();
        for (i, v) in x.samples.iter().take(8).enumerate() {
            let want = [0.0, 1.0, 0.0, -1.0][i % 4];
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn time_axis() {
        let x = TimeSeries::with_start(4.0, 1.0, vec![0.0; 3]).unwrap();
        assert_eq!(x.time(2), 1.5);
        assert!(TimeSeries::new(0.0, vec![]).is_err());
        assert!(TimeSeries::new(1.0, vec![f64::NAN]).is_err());
    }
}
