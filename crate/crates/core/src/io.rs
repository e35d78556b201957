//! File formats: numeric CSV for signals and responses, JSON for filter
//! coefficients. Output is deterministic: fixed column order, `\n` line
//! endings, `.` decimals and a fixed number of significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::FrequencyResponsePoint;
use crate::discretize::DigitalFilterCoefficients;
use crate::error::{Error, Result};

pub const BODE_HEADER: &str = "freq_hz,magnitude_db,phase_deg";
pub const SERIES_HEADER: &str = "time_s,value";
pub const FILTERED_HEADER: &str = "time_s,input,output";

/// `x` with `digits` significant digits, `%g` style: plain notation for
/// moderate exponents, scientific otherwise, trailing zeros dropped.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Nine significant digits, the precision used for all CSV values.
pub fn format_sample(x: f64) -> String {
    format_significant(x, 9)
}

/// Five-significant-figure scientific notation with a signed two-digit
/// exponent, e.g. `9.4408E-04`.
pub fn format_coefficient(x: f64) -> String {
    let s = format!("{:.4E}", x);
    let (mantissa, exp) = s
        .split_once('E')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

/// `[c0, c1, ...]` in [`format_coefficient`] notation.
pub fn format_coefficient_list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| format_coefficient(v)).collect();
    format!("[{}]", items.join(", "))
}

pub fn write_bode_csv(points: &[FrequencyResponsePoint]) -> String {
    let mut out = String::with_capacity(32 * (points.len() + 1));
    out.push_str(BODE_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sample(p.freq_hz),
            format_sample(p.magnitude_db_clamped()),
            format_sample(p.phase_deg)
        );
    }
    out
}

pub fn read_bode_csv(text: &str) -> Result<Vec<FrequencyResponsePoint>> {
    let rows = read_numeric_csv(text, &["freq_hz", "magnitude_db", "phase_deg"])?;
    Ok(rows
        .into_iter()
        .map(|r| FrequencyResponsePoint {
            freq_hz: r[0],
            magnitude_db: r[1],
            phase_deg: r[2],
        })
        .collect())
}

/// Parsed numeric CSV: a header plus rows of equal width.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl NumericTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

pub fn parse_table(text: &str) -> Result<NumericTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let line_of = |pos: Option<&csv::Position>| pos.map_or(1, |p| p.line() as usize);
    let format_error = |e: csv::Error| Error::Format {
        line: line_of(e.position()),
        message: match e.kind() {
            csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                format!("expected {expected_len} columns, found {len}")
            }
            _ => e.to_string(),
        },
    };
    let header: Vec<String> = reader
        .headers()
        .map_err(format_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if header.iter().all(String::is_empty) {
        return Err(Error::Format {
            line: 1,
            message: "missing header".into(),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(format_error)?;
        let line = line_of(record.position());
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| !v.is_nan())
                    .ok_or_else(|| Error::Format {
                        line,
                        message: format!("'{cell}' is not a number"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(NumericTable { header, rows })
}

fn read_numeric_csv(text: &str, expected: &[&str]) -> Result<Vec<Vec<f64>>> {
    let table = parse_table(text)?;
    if table.header != expected {
        return Err(Error::Format {
            line: 1,
            message: format!(
                "expected header '{}', found '{}'",
                expected.join(","),
                table.header.join(",")
            ),
        });
    }
    Ok(table.rows)
}

/// Serialized filter: the JSON coefficient file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub order: usize,
    pub a_hat: Vec<f64>,
    pub b_hat: Vec<f64>,
    pub loop_rate_hz: f64,
    /// Source transfer function in canonical expression form.
    pub provenance: String,
}

impl CoefficientFile {
    pub fn new(coeffs: &DigitalFilterCoefficients, provenance: impl Into<String>) -> Self {
        Self {
            order: coeffs.order(),
            a_hat: coeffs.a_hat().to_vec(),
            b_hat: coeffs.b_hat().to_vec(),
            loop_rate_hz: coeffs.loop_rate_hz(),
            provenance: provenance.into(),
        }
    }

    pub fn coefficients(&self) -> Result<DigitalFilterCoefficients> {
        let c = DigitalFilterCoefficients::new(
            self.a_hat.clone(),
            self.b_hat.clone(),
            self.loop_rate_hz,
        )?;
        if c.order() != self.order {
            return Err(Error::Format {
                line: 1,
                message: format!(
                    "order {} disagrees with {} output coefficients",
                    self.order,
                    c.order()
                ),
            });
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format {
            line: e.line(),
            message: e.to_string(),
        })
    }
}
