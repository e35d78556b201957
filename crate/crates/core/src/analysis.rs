//! Frequency responses, analytic and measured.
//!
//! Analytic curves come straight from the coefficients: `H(jw)` for a
//! continuous model and `H_d(e^{jw dt})` for a digital filter. Measured
//! curves run the actual [`Filter`] either on one steady sinusoid per grid
//! frequency ([`stepped_sine_bode`]) or on a single chirp
//! ([`chirp_bode`]).
//!
//! Chirp responses are read by quadrature demodulation against the phase
//! the generator itself accumulated, over a Hann-weighted window spanning a
//! fixed number of instantaneous cycles and hopping by a fixed number of
//! cycles. Using the generator's phase keeps the analysis frequency locked to
//! the excitation without any FFT.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::discretize::{ContinuousTransferFunction, DigitalFilterCoefficients};
use crate::error::{Error, Result};
use crate::runtime::{check_rate, Filter};
use crate::signals::{generate_chirp_traced, ChirpSpec};

/// Magnitude written to files in place of `-inf` at transmission zeros.
pub const MAGNITUDE_FLOOR_DB: f64 = -300.0;

/// Stepped-sine frequencies must stay below this fraction of the loop rate.
pub const STEPPED_MAX_FRACTION: f64 = 0.45;

/// Cap on the extra settling time derived from the slowest pole.
const MAX_DECAY_SAMPLES: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyResponsePoint {
    pub freq_hz: f64,
    /// `20 log10 |H|`; `-inf` at an exact zero.
    pub magnitude_db: f64,
    /// Unwrapped along the curve.
    pub phase_deg: f64,
}

impl FrequencyResponsePoint {
    pub fn from_complex(freq_hz: f64, h: Complex64) -> Self {
        Self {
            freq_hz,
            magnitude_db: 20.0 * h.norm().log10(),
            phase_deg: h.arg().to_degrees(),
        }
    }

    /// Magnitude with `-inf` replaced by [`MAGNITUDE_FLOOR_DB`].
    pub fn magnitude_db_clamped(&self) -> f64 {
        self.magnitude_db.max(MAGNITUDE_FLOOR_DB)
    }
}

/// Shifts each phase by whole turns so consecutive points differ by at most
/// 180 degrees.
pub fn unwrap_phase(points: &mut [FrequencyResponsePoint]) {
    for i in 1..points.len() {
        let prev = points[i - 1].phase_deg;
        let mut p = points[i].phase_deg;
        p -= 360.0 * ((p - prev) / 360.0).round();
        points[i].phase_deg = p;
    }
}

/// `n` log-spaced frequencies from `fmin` to `fmax` inclusive.
pub fn log_grid(fmin: f64, fmax: f64, n: usize) -> Result<Vec<f64>> {
    if !(fmin > 0.0 && fmax.is_finite() && fmax >= fmin) {
        return Err(Error::InvalidGrid(format!(
            "need 0 < fmin <= fmax, got {fmin}..{fmax}"
        )));
    }
    match n {
        0 => Err(Error::InvalidGrid("need at least one point".into())),
        1 => Ok(vec![fmin]),
        _ => {
            let (l0, l1) = (fmin.ln(), fmax.ln());
            let mut grid: Vec<f64> = (0..n)
                .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
                .collect();
            grid[0] = fmin;
            grid[n - 1] = fmax;
            Ok(grid)
        }
    }
}

/// `N(jw) / D(jw)`.
pub fn analytic_response_continuous(
    tf: &ContinuousTransferFunction,
    omega: f64,
) -> Result<Complex64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter("omega must be positive"));
    }
    let s = Complex64::new(0.0, omega);
    let den = tf.denominator().eval(s);
    if den.norm() < f64::MIN_POSITIVE {
        return Err(Error::DenominatorZero(omega));
    }
    Ok(tf.numerator().eval(s) / den)
}

/// `sum a_k z^-k / (1 - sum b_k z^-(k+1))` at `z = e^{jw dt}`.
pub fn analytic_response_digital(
    coeffs: &DigitalFilterCoefficients,
    omega: f64,
) -> Result<Complex64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter("omega must be positive"));
    }
    let nyquist = PI * coeffs.loop_rate_hz();
    if omega >= nyquist {
        return Err(Error::AboveNyquist { omega, nyquist });
    }
    let z_inv = Complex64::from_polar(1.0, -omega / coeffs.loop_rate_hz());
    let num = coeffs
        .a_hat()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z_inv + a);
    let fb = coeffs
        .b_hat()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &b| acc * z_inv + b)
        * z_inv;
    let den = Complex64::new(1.0, 0.0) - fb;
    if den.norm() < f64::MIN_POSITIVE {
        return Err(Error::DenominatorZero(omega));
    }
    Ok(num / den)
}

/// Analog frequency that the bilinear map sends to digital frequency
/// `omega`: `2 f_l tan(omega dt / 2)`.
pub fn warped_frequency(omega: f64, loop_rate_hz: f64) -> f64 {
    2.0 * loop_rate_hz * (omega / (2.0 * loop_rate_hz)).tan()
}

/// `|H_d(e^{jw dt}) - H(j w_a)| / |H(j w_a)|` with `w_a` the warped frequency.
/// Zero for an exact bilinear discretization of `tf`.
pub fn warping_error(
    tf: &ContinuousTransferFunction,
    coeffs: &DigitalFilterCoefficients,
    omega: f64,
) -> Result<f64> {
    let hd = analytic_response_digital(coeffs, omega)?;
    let h = analytic_response_continuous(tf, warped_frequency(omega, coeffs.loop_rate_hz()))?;
    Ok((hd - h).norm() / h.norm())
}

pub fn continuous_bode(
    tf: &ContinuousTransferFunction,
    grid_hz: &[f64],
) -> Result<Vec<FrequencyResponsePoint>> {
    let mut points = grid_hz
        .iter()
        .map(|&f| {
            analytic_response_continuous(tf, 2.0 * PI * f)
                .map(|h| FrequencyResponsePoint::from_complex(f, h))
        })
        .collect::<Result<Vec<_>>>()?;
    unwrap_phase(&mut points);
    Ok(points)
}

pub fn digital_bode(
    coeffs: &DigitalFilterCoefficients,
    grid_hz: &[f64],
) -> Result<Vec<FrequencyResponsePoint>> {
    let mut points = grid_hz
        .iter()
        .map(|&f| {
            analytic_response_digital(coeffs, 2.0 * PI * f)
                .map(|h| FrequencyResponsePoint::from_complex(f, h))
        })
        .collect::<Result<Vec<_>>>()?;
    unwrap_phase(&mut points);
    Ok(points)
}

/// Samples for the slowest stable pole to decay by 1e-10, capped.
fn decay_samples(coeffs: &DigitalFilterCoefficients) -> usize {
    let r = coeffs.pole_radii().first().copied().unwrap_or(0.0);
    if r <= 0.0 {
        0
    } else if r >= 1.0 - 1e-12 {
        MAX_DECAY_SAMPLES
    } else {
        ((1e-10f64.ln() / r.ln()).ceil() as usize).min(MAX_DECAY_SAMPLES)
    }
}

/// Measures the response at each grid frequency with a steady sinusoid.
///
/// Each run discards at least `settle_cycles` periods (longer if the
/// slowest pole needs it), then least-squares fits
/// `y ~ p sin(wt) + q cos(wt) + c` over `measure_cycles` periods. The
/// constant `c` absorbs the offset left behind by integrating poles.
/// Runs are independent and execute in parallel; output order follows the
/// grid.
pub fn stepped_sine_bode(
    coeffs: &DigitalFilterCoefficients,
    grid_hz: &[f64],
    settle_cycles: u32,
    measure_cycles: u32,
) -> Result<Vec<FrequencyResponsePoint>> {
    if settle_cycles < 5 {
        return Err(Error::InvalidGrid(
            "settle_cycles must be at least 5".into(),
        ));
    }
    if measure_cycles < 2 {
        return Err(Error::InvalidGrid(
            "measure_cycles must be at least 2".into(),
        ));
    }
    let rate = coeffs.loop_rate_hz();
    let limit = STEPPED_MAX_FRACTION * rate;
    if let Some(&f) = grid_hz.iter().find(|&&f| !(f > 0.0 && f < limit)) {
        return Err(Error::InvalidGrid(format!(
            "frequency {f} Hz outside (0, {limit}) Hz"
        )));
    }
    let decay = decay_samples(coeffs);
    let mut points = grid_hz
        .par_iter()
        .map(|&f| measure_single_tone(coeffs, f, settle_cycles, measure_cycles, decay))
        .collect::<Result<Vec<_>>>()?;
    unwrap_phase(&mut points);
    Ok(points)
}

fn measure_single_tone(
    coeffs: &DigitalFilterCoefficients,
    freq_hz: f64,
    settle_cycles: u32,
    measure_cycles: u32,
    decay: usize,
) -> Result<FrequencyResponsePoint> {
    let rate = coeffs.loop_rate_hz();
    let per_cycle = rate / freq_hz;
    let settle = ((settle_cycles as f64 * per_cycle).ceil() as usize).max(decay);
    let measure = (measure_cycles as f64 * per_cycle).round().max(3.0) as usize;
    let w = 2.0 * PI * freq_hz / rate;

    let mut filter = Filter::new(coeffs.clone());
    for i in 0..settle {
        filter.tick((w * i as f64).sin())?;
    }
    let mut ata = Matrix3::<f64>::zeros();
    let mut aty = Vector3::<f64>::zeros();
    for i in settle..settle + measure {
        let (s, c) = (w * i as f64).sin_cos();
        let y = filter.tick(s)?;
        let row = Vector3::new(s, c, 1.0);
        ata += row * row.transpose();
        aty += row * y;
    }
    let sol = ata
        .lu()
        .solve(&aty)
        .ok_or(Error::InvalidGrid(format!("singular fit at {freq_hz} Hz")))?;
    Ok(FrequencyResponsePoint::from_complex(
        freq_hz,
        Complex64::new(sol[0], sol[1]),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpBodeOptions {
    /// Window length in instantaneous cycles.
    pub window_cycles: f64,
    /// Hop between windows in cycles.
    pub hop_cycles: f64,
}

impl Default for ChirpBodeOptions {
    fn default() -> Self {
        Self {
            window_cycles: 4.0,
            hop_cycles: 1.0,
        }
    }
}

/// Filters a chirp built from `spec` and demodulates the response.
pub fn chirp_bode(
    coeffs: &DigitalFilterCoefficients,
    spec: &ChirpSpec,
) -> Result<Vec<FrequencyResponsePoint>> {
    chirp_bode_with(coeffs, spec, ChirpBodeOptions::default())
}

pub fn chirp_bode_with(
    coeffs: &DigitalFilterCoefficients,
    spec: &ChirpSpec,
    options: ChirpBodeOptions,
) -> Result<Vec<FrequencyResponsePoint>> {
    spec.validate()?;
    if spec.omega_max / spec.omega_min < 100.0 * (1.0 - 1e-12) {
        return Err(Error::InvalidGrid(
            "chirp must cover at least two decades".into(),
        ));
    }
    check_rate(spec.sample_rate, coeffs.loop_rate_hz())?;
    let trace = generate_chirp_traced(spec)?;
    let mut filter = Filter::new(coeffs.clone());
    let output = trace
        .series
        .samples
        .iter()
        .map(|&x| filter.tick(x))
        .collect::<Result<Vec<_>>>()?;
    demodulate(
        &trace.series.samples,
        &output,
        &trace.phase,
        &trace.omega,
        options,
    )
}

/// Sliding quadrature demodulation of `output` relative to `input`, both
/// referenced to the excitation phase `phase` (rad) whose instantaneous
/// frequency is `omega` (rad/s). Windows that would run past the end of the
/// record are dropped.
pub fn demodulate(
    input: &[f64],
    output: &[f64],
    phase: &[f64],
    omega: &[f64],
    options: ChirpBodeOptions,
) -> Result<Vec<FrequencyResponsePoint>> {
    let n = input.len();
    if output.len() != n || phase.len() != n || omega.len() != n {
        return Err(Error::InvalidParameter(
            "demodulation inputs differ in length",
        ));
    }
    if !(options.window_cycles > 0.0 && options.hop_cycles > 0.0) {
        return Err(Error::InvalidParameter("window and hop must be positive"));
    }
    let span = 2.0 * PI * options.window_cycles;
    let hop = 2.0 * PI * options.hop_cycles;
    let mut points = Vec::new();
    let mut start_phase = 0.0;
    loop {
        let end_phase = start_phase + span;
        let i0 = phase.partition_point(|&p| p < start_phase);
        let i1 = phase.partition_point(|&p| p < end_phase);
        if i1 >= n {
            break;
        }
        start_phase += hop;
        if i1 - i0 < 8 {
            continue;
        }
        let mut cx = Complex64::new(0.0, 0.0);
        let mut cy = Complex64::new(0.0, 0.0);
        for i in i0..i1 {
            let w = (PI * (phase[i] - (end_phase - span)) / span).sin().powi(2);
            let lo = Complex64::from_polar(w, -phase[i]);
            cx += lo * input[i];
            cy += lo * output[i];
        }
        if cx.norm() == 0.0 {
            continue;
        }
        let centre = phase.partition_point(|&p| p < end_phase - 0.5 * span);
        points.push(FrequencyResponsePoint::from_complex(
            omega[centre] / (2.0 * PI),
            cy / cx,
        ));
    }
    unwrap_phase(&mut points);
    Ok(points)
}

/// Deviation statistics between two responses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseComparison {
    /// Number of points of the first curve inside the common range.
    pub points: usize,
    pub max_db: f64,
    pub mean_db: f64,
    pub max_deg: f64,
    pub mean_deg: f64,
}

/// Compares `a` against `b` at every point of `a` inside the common
/// frequency range, interpolating `b` linearly in log-frequency. Magnitudes
/// are clamped at [`MAGNITUDE_FLOOR_DB`]; phase differences are taken modulo
/// 360 degrees so curves unwrapped from different branches still compare.
pub fn compare_responses(
    a: &[FrequencyResponsePoint],
    b: &[FrequencyResponsePoint],
) -> Result<ResponseComparison> {
    let range = |p: &[FrequencyResponsePoint]| {
        let lo = p.iter().map(|x| x.freq_hz).fold(f64::INFINITY, f64::min);
        let hi = p
            .iter()
            .map(|x| x.freq_hz)
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let (a_lo, a_hi) = range(a);
    let (b_lo, b_hi) = range(b);
    let (lo, hi) = (a_lo.max(b_lo), a_hi.min(b_hi));
    if a.is_empty() || b.is_empty() || lo > hi {
        return Err(Error::DisjointRanges);
    }
    let mut sorted_b = b.to_vec();
    sorted_b.sort_by(|x, y| x.freq_hz.total_cmp(&y.freq_hz));

    let mut stats = ResponseComparison {
        points: 0,
        max_db: 0.0,
        mean_db: 0.0,
        max_deg: 0.0,
        mean_deg: 0.0,
    };
    for p in a.iter().filter(|p| p.freq_hz >= lo && p.freq_hz <= hi) {
        let (mag, phase) = interpolate(&sorted_b, p.freq_hz);
        let d_db = (p.magnitude_db_clamped() - mag).abs();
        let mut d_deg = (p.phase_deg - phase).rem_euclid(360.0);
        if d_deg > 180.0 {
            d_deg = 360.0 - d_deg;
        }
        stats.points += 1;
        stats.max_db = stats.max_db.max(d_db);
        stats.max_deg = stats.max_deg.max(d_deg);
        stats.mean_db += d_db;
        stats.mean_deg += d_deg;
    }
    if stats.points == 0 {
        return Err(Error::DisjointRanges);
    }
    stats.mean_db /= stats.points as f64;
    stats.mean_deg /= stats.points as f64;
    Ok(stats)
}

/// Reads `points` at each grid frequency inside its range, interpolating
/// linearly in log-frequency. Grid frequencies outside the curve are skipped.
pub fn resample(points: &[FrequencyResponsePoint], grid_hz: &[f64]) -> Vec<FrequencyResponsePoint> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|x, y| x.freq_hz.total_cmp(&y.freq_hz));
    let (Some(first), Some(last)) = (sorted.first(), sorted.last()) else {
        return Vec::new();
    };
    let (lo, hi) = (first.freq_hz, last.freq_hz);
    grid_hz
        .iter()
        .filter(|&&f| f >= lo && f <= hi)
        .map(|&f| {
            let (magnitude_db, phase_deg) = interpolate(&sorted, f);
            FrequencyResponsePoint {
                freq_hz: f,
                magnitude_db,
                phase_deg,
            }
        })
        .collect()
}

/// Clamped magnitude and phase of a sorted curve at `f`.
fn interpolate(sorted: &[FrequencyResponsePoint], f: f64) -> (f64, f64) {
    let i = sorted.partition_point(|p| p.freq_hz < f);
    if i < sorted.len() && sorted[i].freq_hz == f {
        return (sorted[i].magnitude_db_clamped(), sorted[i].phase_deg);
    }
    let (p0, p1) = (&sorted[i - 1], &sorted[i]);
    let t = (f.ln() - p0.freq_hz.ln()) / (p1.freq_hz.ln() - p0.freq_hz.ln());
    let lerp = |a: f64, b: f64| a + (b - a) * t;
    (
        lerp(p0.magnitude_db_clamped(), p1.magnitude_db_clamped()),
        lerp(p0.phase_deg, p1.phase_deg),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{butterworth2, hz, leadlag, lowpass1, notch};
    use crate::discretize::tustin_horner;
    use crate::signals::ChirpKind;

    fn digital(tf: &ContinuousTransferFunction) -> DigitalFilterCoefficients {
        tustin_horner(tf, 1000.0).unwrap()
    }

    #[test]
    fn butterworth_continuous_at_cutoff() {
        let tf = butterworth2(hz(10.0)).unwrap();
        let p = FrequencyResponsePoint::from_complex(
            10.0,
            analytic_response_continuous(&tf, hz(10.0)).unwrap(),
        );
        assert!((p.magnitude_db + 3.010_299_956_639_812).abs() < 1e-10);
        assert!((p.phase_deg + 90.0).abs() < 1e-10);
    }

    #[test]
    fn continuous_low_frequency_gain() {
        let tf = lowpass1(hz(10.0)).unwrap();
        let h = analytic_response_continuous(&tf, 1e-9).unwrap();
        assert!((h.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn notch_null_is_minus_infinity() {
        let wn = hz(60.0);
        let tf = notch(wn, 5.0).unwrap();
        let h = analytic_response_continuous(&tf, wn).unwrap();
        assert!(h.norm() < 1e-12);
        // the printed value is only -inf when the cancellation is exact
        let exact = ContinuousTransferFunction::new(&[1.0, 0.0, 4.0], &[1.0, 1.0, 4.0]).unwrap();
        let p = FrequencyResponsePoint::from_complex(
            1.0 / PI,
            analytic_response_continuous(&exact, 2.0).unwrap(),
        );
        assert_eq!(p.magnitude_db, f64::NEG_INFINITY);
        assert_eq!(p.magnitude_db_clamped(), MAGNITUDE_FLOOR_DB);
    }

    #[test]
    fn pole_on_axis() {
        let tf = ContinuousTransferFunction::new(&[1.0], &[1.0, 0.0, 4.0]).unwrap();
        assert_eq!(
            analytic_response_continuous(&tf, 2.0),
            Err(Error::DenominatorZero(2.0))
        );
    }

    #[test]
    fn digital_identity_and_nyquist() {
        let id = DigitalFilterCoefficients::identity(100.0).unwrap();
        for w in [0.1, 10.0, 300.0] {
            assert_eq!(
                analytic_response_digital(&id, w).unwrap(),
                Complex64::new(1.0, 0.0)
            );
        }
        assert!(matches!(
            analytic_response_digital(&id, PI * 100.0),
            Err(Error::AboveNyquist { .. })
        ));
    }

    #[test]
    fn digital_lowpass_corner() {
        let c = digital(&lowpass1(hz(10.0)).unwrap());
        let h = analytic_response_digital(&c, hz(10.0)).unwrap();
        let db = 20.0 * h.norm().log10();
        assert!((db + 3.01).abs() < 0.01, "{db}");
    }

    #[test]
    fn warping_identity_spot_check() {
        let tf = butterworth2(hz(10.0)).unwrap();
        let c = digital(&tf);
        for f in [0.5, 10.0, 123.0, 400.0] {
            assert!(warping_error(&tf, &c, hz(f)).unwrap() < 1e-6);
        }
    }

    #[test]
    fn grid_endpoints() {
        let g = log_grid(0.1, 100.0, 4).unwrap();
        assert_eq!(g[0], 0.1);
        assert_eq!(g[3], 100.0);
        assert!((g[1] - 1.0).abs() < 1e-12);
        assert!(log_grid(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn unwrap_keeps_steps_small() {
        let mut pts: Vec<_> = [170.0, -170.0, -10.0, 160.0]
            .iter()
            .map(|&p| FrequencyResponsePoint {
                freq_hz: 1.0,
                magnitude_db: 0.0,
                phase_deg: p,
            })
            .collect();
        unwrap_phase(&mut pts);
        let got: Vec<f64> = pts.iter().map(|p| p.phase_deg).collect();
        assert_eq!(got, [170.0, 190.0, 350.0, 520.0]);
    }

    #[test]
    fn stepped_identity_is_flat() {
        let id = DigitalFilterCoefficients::identity(1000.0).unwrap();
        let pts = stepped_sine_bode(&id, &[1.0, 10.0, 100.0], 5, 2).unwrap();
        for p in pts {
            assert!(p.magnitude_db.abs() < 1e-9 && p.phase_deg.abs() < 1e-7);
        }
    }

    #[test]
    fn stepped_butterworth_at_cutoff() {
        let c = digital(&butterworth2(hz(10.0)).unwrap());
        let p = stepped_sine_bode(&c, &[10.0], 10, 4).unwrap()[0];
        assert!((p.magnitude_db + 3.0).abs() < 0.1);
    }

    #[test]
    fn stepped_notch_null_sits_at_warped_frequency() {
        let c = digital(&notch(hz(60.0), 5.0).unwrap());
        // digital null: f = (f_l / pi) atan(omega_n / (2 f_l))
        let null_hz = 1000.0 / PI * (hz(60.0) / 2000.0).atan();
        let p = stepped_sine_bode(&c, &[null_hz], 20, 10).unwrap()[0];
        assert!(p.magnitude_db < -40.0, "{}", p.magnitude_db);

        // at exactly 60 Hz the digital notch only reaches about -18 dB
        let at60 = stepped_sine_bode(&c, &[60.0], 20, 10).unwrap()[0];
        let want = 20.0
            * analytic_response_digital(&c, hz(60.0))
                .unwrap()
                .norm()
                .log10();
        assert!((at60.magnitude_db - want).abs() < 0.01);
        assert!(want > -19.0 && want < -18.0, "{want}");
    }

    #[test]
    fn stepped_rejects_bad_grid() {
        let id = DigitalFilterCoefficients::identity(1000.0).unwrap();
        assert!(stepped_sine_bode(&id, &[450.0], 5, 2).is_err());
        assert!(stepped_sine_bode(&id, &[10.0], 4, 2).is_err());
        assert!(stepped_sine_bode(&id, &[10.0], 5, 1).is_err());
    }

    fn sweep(duration: f64) -> ChirpSpec {
        ChirpSpec {
            kind: ChirpKind::Exponential,
            omega_min: hz(0.1),
            omega_max: hz(100.0),
            duration,
            amplitude: 1.0,
            sample_rate: 1000.0,
        }
    }

    #[test]
    fn chirp_identity_is_flat() {
        let id = DigitalFilterCoefficients::identity(1000.0).unwrap();
        let pts = chirp_bode(&id, &sweep(60.0)).unwrap();
        assert!(pts.len() > 20);
        for p in &pts {
            assert!(p.magnitude_db.abs() < 0.05 && p.phase_deg.abs() < 0.5);
        }
    }

    #[test]
    fn chirp_leadlag_asymptotes() {
        let c = digital(&leadlag(10.0, hz(1.0), hz(10.0)).unwrap());
        let pts = chirp_bode(&c, &sweep(200.0)).unwrap();
        let low = pts.iter().find(|p| p.freq_hz > 0.15).unwrap();
        let high = pts.iter().rev().find(|p| p.freq_hz < 90.0).unwrap();
        assert!(low.magnitude_db.abs() < 0.5, "{low:?}");
        assert!((high.magnitude_db - 20.0).abs() < 0.5, "{high:?}");
    }

    #[test]
    fn chirp_rejects_narrow_or_mismatched_sweep() {
        let id = DigitalFilterCoefficients::identity(1000.0).unwrap();
        let mut s = sweep(10.0);
        s.omega_max = hz(5.0);
        assert!(chirp_bode(&id, &s).is_err());
        let id = DigitalFilterCoefficients::identity(500.0).unwrap();
        assert!(matches!(
            chirp_bode(&id, &sweep(10.0)),
            Err(Error::RateMismatch { .. })
        ));
    }

    #[test]
    fn compare_identical_and_disjoint() {
        let c = digital(&butterworth2(hz(10.0)).unwrap());
        let grid = log_grid(0.1, 100.0, 50).unwrap();
        let a = digital_bode(&c, &grid).unwrap();
        let s = compare_responses(&a, &a).unwrap();
        assert_eq!((s.max_db, s.max_deg, s.points), (0.0, 0.0, 50));

        let b = digital_bode(&c, &log_grid(200.0, 300.0, 5).unwrap()).unwrap();
        assert_eq!(compare_responses(&a, &b), Err(Error::DisjointRanges));
    }

    #[test]
    fn compare_continuous_and_digital_butterworth() {
        let tf = butterworth2(hz(10.0)).unwrap();
        let c = digital(&tf);
        let grid = log_grid(0.1, 40.0, 200).unwrap();
        let s = compare_responses(
            &continuous_bode(&tf, &grid).unwrap(),
            &digital_bode(&c, &grid).unwrap(),
        )
        .unwrap();
        assert!(s.max_db < 0.1, "{s:?}");
    }

    #[test]
    fn resample_onto_grid() {
        let c = digital(&butterworth2(hz(10.0)).unwrap());
        let fine = digital_bode(&c, &log_grid(1.0, 100.0, 400).unwrap()).unwrap();
        let grid = log_grid(0.5, 50.0, 20).unwrap();
        let coarse = resample(&fine, &grid);
        assert_eq!(coarse.len(), grid.iter().filter(|&&f| f >= 1.0).count());
        let exact = digital_bode(&c, &grid[grid.len() - coarse.len()..]).unwrap();
        let s = compare_responses(&coarse, &exact).unwrap();
        assert!(s.max_db < 0.01 && s.max_deg < 0.1, "{s:?}");
        assert!(resample(&[], &grid).is_empty());
    }
}
