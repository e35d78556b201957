//! Command-line front end: `design`, `chirp`, `filter`, `bode`, `compare`.
//!
//! Frequencies on the command line are in Hz and converted with
//! `w = 2 pi f` internally. Data goes to `--out` or stdout; diagnostics go to
//! stderr as a single line starting with `error[CODE]:`.
//!
//! Exit codes: 0 success, 1 runtime failure or `compare` threshold
//! exceeded, 2 usage or parse error, 3 non-causal transfer function,
//! 4 degenerate normalization.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    chirp_bode_with, compare_responses, continuous_bode, digital_bode, log_grid, resample,
    stepped_sine_bode, ChirpBodeOptions, FrequencyResponsePoint,
};
use crate::catalog::{self, hz};
use crate::discretize::{tustin_horner, ContinuousTransferFunction, DigitalFilterCoefficients};
use crate::error::Error;
use crate::io::{
    format_coefficient, format_coefficient_list, format_sample, parse_table, read_bode_csv,
    write_bode_csv, CoefficientFile, FILTERED_HEADER, SERIES_HEADER,
};
use crate::runtime::{Filter, RATE_TOLERANCE};
use crate::signals::{generate_chirp, ChirpKind, ChirpSpec};
use crate::tfparse::{parse_coeff_lists, parse_expression};

#[derive(Debug, Parser)]
#[command(
    name = "tustin",
    version,
    about = "Digital filters via Tustin's bilinear transform"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discretize a transfer function and write its coefficient file
    Design(DesignArgs),
    /// Generate a linear or exponential chirp as `time_s,value` CSV
    Chirp(ChirpArgs),
    /// Run a coefficient file over an input CSV
    Filter(FilterArgs),
    /// Frequency response as `freq_hz,magnitude_db,phase_deg` CSV
    Bode(BodeArgs),
    /// Compare two frequency-response CSVs
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct TfSource {
    /// Rational expression in s, e.g. "1/(10s+1)"
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with_all = ["num", "den"])]
    tf: Option<String>,
    /// Numerator coefficients, descending powers, e.g. "1"
    #[arg(long, global = true, allow_hyphen_values = true, requires = "den")]
    num: Option<String>,
    /// Denominator coefficients, descending powers, e.g. "10,1"
    #[arg(long, global = true, allow_hyphen_values = true, requires = "num")]
    den: Option<String>,
}

#[derive(Debug, Args)]
struct DesignArgs {
    #[command(subcommand)]
    family: Option<Family>,
    #[command(flatten)]
    source: TfSource,
    /// Loop rate in Hz
    #[arg(long, global = true)]
    rate: Option<f64>,
    /// Coefficient file to write (JSON)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
enum Family {
    /// w0 / (s + w0)
    Lowpass1 {
        #[arg(long)]
        cutoff_hz: f64,
    },
    /// Second-order Butterworth low-pass
    Butter2 {
        #[arg(long)]
        cutoff_hz: f64,
    },
    /// (s^2 + wn^2) / (s^2 + (wn/Q) s + wn^2)
    Notch {
        #[arg(long)]
        notch_hz: f64,
        #[arg(long)]
        q: f64,
    },
    /// PID with filtered derivative
    Pid {
        #[arg(long)]
        kp: f64,
        #[arg(long)]
        ki: f64,
        #[arg(long)]
        kd: f64,
        #[arg(long)]
        tau: f64,
    },
    /// K (s + wz) / (s + wp)
    Leadlag {
        #[arg(long)]
        gain: f64,
        #[arg(long)]
        zero_hz: f64,
        #[arg(long)]
        pole_hz: f64,
    },
    /// Third-order reference filter with fixed coefficients
    Multiorder,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Linear,
    Exponential,
}

impl From<KindArg> for ChirpKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Linear => ChirpKind::Linear,
            KindArg::Exponential => ChirpKind::Exponential,
        }
    }
}

#[derive(Debug, Args)]
struct ChirpArgs {
    #[arg(long, value_enum, default_value = "exponential")]
    kind: KindArg,
    #[arg(long)]
    fmin_hz: f64,
    #[arg(long)]
    fmax_hz: f64,
    /// Sweep length in seconds
    #[arg(long)]
    duration: f64,
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Sample rate in Hz
    #[arg(long)]
    rate: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Coefficient file written by `design`
    #[arg(long)]
    coeffs: PathBuf,
    /// CSV with a `time_s` column and a `value` column
    #[arg(long)]
    input: PathBuf,
    /// Start from zero histories instead of the first input
    #[arg(long)]
    no_heuristic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    AnalyticContinuous,
    AnalyticDigital,
    Stepped,
    Chirp,
}

#[derive(Debug, Args)]
struct BodeArgs {
    #[arg(long, value_enum, default_value = "analytic-digital")]
    method: Method,
    /// Coefficient file; otherwise a transfer function plus --rate
    #[arg(long, conflicts_with_all = ["tf", "num", "den", "rate"])]
    coeffs: Option<PathBuf>,
    #[command(flatten)]
    source: TfSource,
    /// Loop rate in Hz for discretizing --tf / --num --den
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    fmin_hz: f64,
    /// Defaults to 0.4 times the loop rate
    #[arg(long)]
    fmax_hz: Option<f64>,
    /// Log-spaced grid size
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Stepped sine: periods discarded before fitting
    #[arg(long, default_value_t = 20)]
    settle_cycles: u32,
    /// Stepped sine: periods fitted
    #[arg(long, default_value_t = 10)]
    measure_cycles: u32,
    /// Chirp: sweep length in seconds
    #[arg(long, default_value_t = 200.0)]
    duration: f64,
    #[arg(long, value_enum, default_value = "exponential")]
    chirp_kind: KindArg,
    /// Chirp: demodulation window in cycles
    #[arg(long, default_value_t = 4.0)]
    window_cycles: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,
    /// Fail when the largest magnitude deviation exceeds this (dB)
    #[arg(long)]
    max_db: Option<f64>,
    /// Fail when the largest phase deviation exceeds this (degrees)
    #[arg(long)]
    max_deg: Option<f64>,
}

/// A failed command: exit code, machine-readable tag, message.
#[derive(Debug)]
struct Failure {
    code: i32,
    tag: &'static str,
    message: String,
}

impl Failure {
    fn new(code: i32, tag: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            tag,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, tag) = match &e {
            Error::Syntax(_) => (2, "parse"),
            Error::NonCausal { .. } => (3, "non-causal"),
            Error::DegenerateLeadingCoefficient { .. } => (4, "degenerate"),
            Error::Io(_) => (1, "io"),
            Error::Format { .. } => (1, "format"),
            Error::RateMismatch { .. } => (1, "rate"),
            _ => (1, "invalid"),
        };
        Self::new(code, tag, e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs the command line from the process environment.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs `args` (program name first) writing data and reports to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error[usage]: {first}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Design(a) => design(a, out, err),
        Command::Chirp(a) => chirp(a, out),
        Command::Filter(a) => filter(a, out),
        Command::Bode(a) => bode(a, out),
        Command::Compare(a) => compare(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let message = f.message.replace('\n', " ");
            let _ = writeln!(err, "error[{}]: {}", f.tag, message);
            f.code
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Error::Io(format!("{}: {e}", path.display())).into()
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(format!("stdout: {e}")).into()),
    }
}

fn transfer_function(
    source: &TfSource,
    family: Option<&Family>,
) -> std::result::Result<ContinuousTransferFunction, Failure> {
    let given = [source.tf.is_some(), source.num.is_some(), family.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(Failure::new(
            2,
            "usage",
            "give exactly one of --tf, --num/--den or a filter family",
        ));
    }
    let tf = if let Some(text) = &source.tf {
        parse_expression(text)?
    } else if let (Some(num), Some(den)) = (&source.num, &source.den) {
        parse_coeff_lists(num, den)?
    } else {
        match family.expect("one source is present") {
            Family::Lowpass1 { cutoff_hz } => catalog::lowpass1(hz(*cutoff_hz))?,
            Family::Butter2 { cutoff_hz } => catalog::butterworth2(hz(*cutoff_hz))?,
            Family::Notch { notch_hz, q } => catalog::notch(hz(*notch_hz), *q)?,
            Family::Pid { kp, ki, kd, tau } => catalog::pid(*kp, *ki, *kd, *tau)?,
            Family::Leadlag {
                gain,
                zero_hz,
                pole_hz,
            } => catalog::leadlag(*gain, hz(*zero_hz), hz(*pole_hz))?,
            Family::Multiorder => catalog::multiorder_example(),
        }
    };
    Ok(tf)
}

fn required_rate(rate: Option<f64>) -> std::result::Result<f64, Failure> {
    rate.ok_or_else(|| Failure::new(2, "usage", "--rate is required"))
}

fn design(a: DesignArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let tf = transfer_function(&a.source, a.family.as_ref())?;
    let rate = required_rate(a.rate)?;
    let coeffs = tustin_horner(&tf, rate)?;
    let file = CoefficientFile::new(&coeffs, tf.to_string());
    if let Some(path) = &a.out {
        emit(Some(path), &file.to_json(), out)?;
    }

    let radii = coeffs.pole_radii();
    let mut report = String::new();
    let _ = writeln!(report, "H(s) = {tf}");
    let _ = writeln!(report, "loop_rate_hz = {}", format_sample(rate));
    let _ = writeln!(
        report,
        "a_hat = {}",
        format_coefficient_list(coeffs.a_hat())
    );
    let _ = writeln!(
        report,
        "b_hat = {}",
        format_coefficient_list(coeffs.b_hat())
    );
    let _ = writeln!(report, "pole_radii = {}", format_coefficient_list(&radii));
    emit(None, &report, out)?;
    if let Some(&r) = radii.first() {
        if r >= 1.0 - 1e-9 {
            let _ = writeln!(
                err,
                "warning: pole radius {} is on or outside the unit circle; the filter is not asymptotically stable",
                format_coefficient(r)
            );
        }
    }
    Ok(0)
}

fn chirp(a: ChirpArgs, out: &mut dyn Write) -> CmdResult {
    let spec = ChirpSpec {
        kind: a.kind.into(),
        omega_min: hz(a.fmin_hz),
        omega_max: hz(a.fmax_hz),
        duration: a.duration,
        amplitude: a.amplitude,
        sample_rate: a.rate,
    };
    let series = generate_chirp(&spec)?;
    let mut text = String::with_capacity(24 * (series.len() + 1));
    text.push_str(SERIES_HEADER);
    text.push('\n');
    for (i, v) in series.samples.iter().enumerate() {
        let _ = writeln!(
            text,
            "{},{}",
            format_sample(series.time(i)),
            format_sample(*v)
        );
    }
    emit(a.out.as_deref(), &text, out)?;
    Ok(0)
}

/// Checks that `times` are spaced at `rate`. Timestamps carry 9 significant
/// digits, so each is allowed its rounding error on top of the rate
/// tolerance.
fn check_timestamps(times: &[f64], rate: f64) -> Result<(), Error> {
    let (Some(&t0), Some(&last)) = (times.first(), times.last()) else {
        return Ok(());
    };
    let dt = 1.0 / rate;
    for (i, &t) in times.iter().enumerate() {
        let expected = t0 + i as f64 * dt;
        let quantum = 1e-8 * (t.abs().max(t0.abs()));
        let slack = quantum + RATE_TOLERANCE * (i as f64 * dt) + 1e-12 * dt;
        if (t - expected).abs() > slack {
            let series = (times.len() - 1) as f64 / (last - t0);
            return Err(Error::RateMismatch {
                series,
                design: rate,
            });
        }
    }
    Ok(())
}

fn filter(a: FilterArgs, out: &mut dyn Write) -> CmdResult {
    let coeffs = CoefficientFile::from_json(&read_file(&a.coeffs)?)?.coefficients()?;
    let table = parse_table(&read_file(&a.input)?)?;
    let times = table.column("time_s").ok_or_else(|| Error::Format {
        line: 1,
        message: "input has no time_s column".into(),
    })?;
    let values = match table.column("value") {
        Some(v) => v,
        None if table.header.len() == 2 => table.rows.iter().map(|r| r[1]).collect(),
        None => {
            return Err(Error::Format {
                line: 1,
                message: "input has no value column".into(),
            }
            .into())
        }
    };
    check_timestamps(&times, coeffs.loop_rate_hz())?;

    let mut f = Filter::new(coeffs).with_startup_fill(!a.no_heuristic);
    let mut text = String::with_capacity(32 * (values.len() + 1));
    text.push_str(FILTERED_HEADER);
    text.push('\n');
    for (t, x) in times.iter().zip(&values) {
        let y = f.tick(*x)?;
        let _ = writeln!(
            text,
            "{},{},{}",
            format_sample(*t),
            format_sample(*x),
            format_sample(y)
        );
    }
    emit(a.out.as_deref(), &text, out)?;
    Ok(0)
}

fn load_coefficients(
    path: &Path,
) -> std::result::Result<(CoefficientFile, DigitalFilterCoefficients), Failure> {
    let file = CoefficientFile::from_json(&read_file(path)?)?;
    let coeffs = file.coefficients()?;
    Ok((file, coeffs))
}

fn bode(a: BodeArgs, out: &mut dyn Write) -> CmdResult {
    let (tf, coeffs) = match &a.coeffs {
        Some(path) => {
            let (file, coeffs) = load_coefficients(path)?;
            let tf = if a.method == Method::AnalyticContinuous {
                Some(parse_expression(&file.provenance)?)
            } else {
                None
            };
            (tf, Some(coeffs))
        }
        None => {
            let tf = transfer_function(&a.source, None)?;
            let coeffs = match (a.method, a.rate) {
                (Method::AnalyticContinuous, None) => None,
                (_, rate) => Some(tustin_horner(&tf, required_rate(rate)?)?),
            };
            (Some(tf), coeffs)
        }
    };
    let fmax = match (a.fmax_hz, &coeffs) {
        (Some(f), _) => f,
        (None, Some(c)) => 0.4 * c.loop_rate_hz(),
        (None, None) => return Err(Failure::new(2, "usage", "--fmax-hz or --rate is required")),
    };
    let grid = log_grid(a.fmin_hz, fmax, a.points)?;

    let points: Vec<FrequencyResponsePoint> = match a.method {
        Method::AnalyticContinuous => continuous_bode(tf.as_ref().expect("set above"), &grid)?,
        Method::AnalyticDigital => digital_bode(coeffs.as_ref().expect("set above"), &grid)?,
        Method::Stepped => stepped_sine_bode(
            coeffs.as_ref().expect("set above"),
            &grid,
            a.settle_cycles,
            a.measure_cycles,
        )?,
        Method::Chirp => {
            let c = coeffs.as_ref().expect("set above");
            let spec = ChirpSpec {
                kind: a.chirp_kind.into(),
                omega_min: hz(a.fmin_hz),
                omega_max: hz(fmax),
                duration: a.duration,
                amplitude: 1.0,
                sample_rate: c.loop_rate_hz(),
            };
            let options = ChirpBodeOptions {
                window_cycles: a.window_cycles,
                ..ChirpBodeOptions::default()
            };
            resample(&chirp_bode_with(c, &spec, options)?, &grid)
        }
    };
    emit(a.out.as_deref(), &write_bode_csv(&points), out)?;
    Ok(0)
}

fn compare(a: CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let first = read_bode_csv(&read_file(&a.first)?)?;
    let second = read_bode_csv(&read_file(&a.second)?)?;
    let s = compare_responses(&first, &second)?;
    let mut report = String::new();
    let _ = writeln!(report, "points = {}", s.points);
    let _ = writeln!(report, "max_db = {}", format_sample(s.max_db));
    let _ = writeln!(report, "mean_db = {}", format_sample(s.mean_db));
    let _ = writeln!(report, "max_deg = {}", format_sample(s.max_deg));
    let _ = writeln!(report, "mean_deg = {}", format_sample(s.mean_deg));
    emit(None, &report, out)?;

    let mut exceeded = Vec::new();
    if let Some(limit) = a.max_db {
        if s.max_db > limit {
            exceeded.push(format!(
                "max_db {} > {}",
                format_sample(s.max_db),
                format_sample(limit)
            ));
        }
    }
    if let Some(limit) = a.max_deg {
        if s.max_deg > limit {
            exceeded.push(format!(
                "max_deg {} > {}",
                format_sample(s.max_deg),
                format_sample(limit)
            ));
        }
    }
    if exceeded.is_empty() {
        Ok(0)
    } else {
        let _ = writeln!(err, "error[threshold]: {}", exceeded.join(", "));
        Ok(1)
    }
}
