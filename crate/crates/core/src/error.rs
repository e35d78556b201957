use thiserror::Error;

use crate::tfparse::TfSyntaxError;

/// Errors produced anywhere in filter design, execution and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-causal transfer function: numerator order {numerator} exceeds denominator order {denominator}")]
    NonCausal {
        numerator: usize,
        denominator: usize,
    },

    #[error("loop rate must be positive and finite, got {0}")]
    NonPositiveRate(f64),

    #[error("leading z-domain denominator coefficient {leading:e} is degenerate (max |coeff| {max:e}); the continuous denominator vanishes at s = 2*f_l")]
    DegenerateLeadingCoefficient { leading: f64, max: f64 },

    #[error("leading denominator coefficient is zero")]
    ZeroLeadingDenominator,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("argument scale factor must be nonzero and finite")]
    ZeroScale,

    #[error("exponent {0} exceeds the supported maximum of {1}")]
    ExponentTooLarge(u32, u32),

    #[error("coefficient vectors have mismatched lengths: a_hat {a_len}, b_hat {b_len} (expected a_hat = b_hat + 1)")]
    CoefficientLength { a_len: usize, b_len: usize },

    #[error("series sample rate {series} Hz does not match filter design rate {design} Hz")]
    RateMismatch { series: f64, design: f64 },

    #[error("frequency {omega} rad/s is at or above Nyquist ({nyquist} rad/s)")]
    AboveNyquist { omega: f64, nyquist: f64 },

    #[error("denominator vanishes at s = j*{0}")]
    DenominatorZero(f64),

    #[error("invalid chirp: {0}")]
    InvalidChirp(&'static str),

    #[error("time {t} s lies outside [0, {duration}] s")]
    TimeOutOfRange { t: f64, duration: f64 },

    #[error("requested {0} samples exceeds the 1e9 sample limit")]
    SampleCountOverflow(f64),

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("frequency responses do not overlap")]
    DisjointRanges,

    #[error("{0}")]
    Io(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Syntax(#[from] TfSyntaxError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
