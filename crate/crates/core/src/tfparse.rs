//! Text front-end for continuous transfer functions.
//!
//! Two syntaxes are accepted:
//!
//! * coefficient lists in descending powers, e.g. numerator `1` and
//!   denominator `10, 1`;
//! * a rational expression in `s`, e.g. `1/(10s+1)` or
//!   `(s^2 + 142122.30)/(s^2 + 75.398*s + 142122.30)`.
//!
//! Expression grammar (whitespace is insignificant):
//!
//! ```text
//! expr := side ("/" side)?
//! side := "(" side ")" | poly
//! poly := term (("+" | "-") term)*
//! term := ("+" | "-")? number? ("*"? "s" ("^" uint)?)?     -- not both empty
//! ```
//!
//! Multiplication may be implicit (`10s`). Like powers are summed. The
//! highest power written fixes the polynomial order, even if its
//! coefficient is zero.

use std::fmt;

use thiserror::Error;

use crate::discretize::ContinuousTransferFunction;
use crate::error::Result;
use crate::polynomial::Polynomial;

/// Highest power of `s` accepted in an expression.
pub const MAX_EXPONENT: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {expected}, found {found}")]
pub struct TfSyntaxError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl TfSyntaxError {
    fn new(offset: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Self {
            offset,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
    text: String,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tok {
            Tok::End => f.write_str("end of input"),
            _ => write!(f, "'{}'", self.text),
        }
    }
}

fn lex(src: &str) -> Result<Vec<Token>, TfSyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b's' => Some(Tok::Var),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                offset: i,
                text: (b as char).to_string(),
            });
            i += 1;
        } else if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_digit() || b == b'.' {
            let start = i;
            i = scan_number(bytes, i);
            let text = &src[start..i];
            let value: f64 = text
                .parse()
                .map_err(|_| TfSyntaxError::new(start, "number", format!("'{text}'")))?;
            if !value.is_finite() {
                return Err(TfSyntaxError::new(
                    start,
                    "finite number",
                    format!("'{text}'"),
                ));
            }
            out.push(Token {
                tok: Tok::Num(value),
                offset: start,
                text: text.to_string(),
            });
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(TfSyntaxError::new(
                i,
                "number, 's', operator or parenthesis",
                format!("'{ch}'"),
            ));
        }
    }
    out.push(Token {
        tok: Tok::End,
        offset: src.len(),
        text: String::new(),
    });
    Ok(out)
}

/// End of a decimal literal `digits [. digits] [(e|E) [+-] digits]`.
fn scan_number(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    if i < b.len() && b[i] == b'.' {
        i += 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> TfSyntaxError {
        let t = self.peek();
        TfSyntaxError::new(t.offset, expected, t.to_string())
    }

    fn side(&mut self) -> Result<Polynomial, TfSyntaxError> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let p = self.side()?;
            match self.peek().tok {
                Tok::RParen => {
                    self.bump();
                    Ok(p)
                }
                Tok::Slash => Err(self.error("')' (nested division is not supported)")),
                _ => Err(self.error("')'")),
            }
        } else {
            self.poly()
        }
    }

    fn poly(&mut self) -> Result<Polynomial, TfSyntaxError> {
        let mut coeffs: Vec<Option<f64>> = Vec::new();
        let mut add = |power: usize, c: f64| {
            if coeffs.len() <= power {
                coeffs.resize(power + 1, None);
            }
            coeffs[power] = Some(match coeffs[power] {
                Some(v) => v + c,
                None => c,
            });
        };
        let (power, c) = self.term()?;
        add(power, c);
        while matches!(self.peek().tok, Tok::Plus | Tok::Minus) {
            let negate = self.bump().tok == Tok::Minus;
            let (power, c) = self.term()?;
            add(power, if negate { -c } else { c });
        }
        let coeffs = coeffs.into_iter().map(|c| c.unwrap_or(0.0)).collect();
        Ok(Polynomial::from_ascending(coeffs).expect("lexer only yields finite numbers"))
    }

    fn term(&mut self) -> Result<(usize, f64), TfSyntaxError> {
        let mut sign = 1.0;
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                sign = -1.0;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut coeff = None;
        if let Tok::Num(v) = self.peek().tok {
            self.bump();
            coeff = Some(v);
        }
        let mut power = 0;
        let star = if coeff.is_some() && self.peek().tok == Tok::Star {
            Some(self.bump())
        } else {
            None
        };
        if self.peek().tok == Tok::Var {
            self.bump();
            power = 1;
            if self.peek().tok == Tok::Caret {
                self.bump();
                power = self.exponent()?;
            }
        } else if star.is_some() {
            return Err(self.error("'s'"));
        } else if coeff.is_none() {
            return Err(self.error("number or 's'"));
        }
        Ok((power, sign * coeff.unwrap_or(1.0)))
    }

    fn exponent(&mut self) -> Result<usize, TfSyntaxError> {
        let t = self.peek().clone();
        let digits_only = !t.text.is_empty() && t.text.bytes().all(|b| b.is_ascii_digit());
        if !matches!(t.tok, Tok::Num(_)) || !digits_only {
            return Err(self.error("non-negative integer exponent"));
        }
        match t.text.parse::<u32>() {
            Ok(p) if p <= MAX_EXPONENT => {
                self.bump();
                Ok(p as usize)
            }
            _ => Err(TfSyntaxError::new(
                t.offset,
                format!("exponent at most {MAX_EXPONENT}"),
                format!("'{}'", t.text),
            )),
        }
    }
}

/// Parses a rational expression in `s`.
pub fn parse_expression(text: &str) -> Result<ContinuousTransferFunction> {
    let (num, den) = parse_polynomials(text)?;
    ContinuousTransferFunction::from_polynomials(num, den)
}

/// Syntax-only half of [`parse_expression`]: numerator and denominator
/// polynomials (denominator `1` when no `/` is present).
pub fn parse_polynomials(text: &str) -> Result<(Polynomial, Polynomial), TfSyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let num = p.side()?;
    let den = if p.peek().tok == Tok::Slash {
        p.bump();
        let den = p.side()?;
        if p.peek().tok == Tok::Slash {
            return Err(p.error("end of input (only one '/' is allowed)"));
        }
        den
    } else {
        Polynomial::constant(1.0)
    };
    if p.peek().tok != Tok::End {
        return Err(p.error("'+', '-', '/' or end of input"));
    }
    Ok((num, den))
}

/// Parses a comma- or whitespace-separated list of descending-power
/// coefficients.
pub fn parse_coefficient_list(text: &str) -> Result<Vec<f64>, TfSyntaxError> {
    let mut out = Vec::new();
    let mut expect_value = true;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
        } else if b == b',' {
            if expect_value {
                return Err(TfSyntaxError::new(i, "coefficient", "','"));
            }
            expect_value = true;
            i += 1;
        } else {
            let start = i;
            while i < bytes.len() && bytes[i] != b',' && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let tok = &text[start..i];
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => {
                    out.push(v);
                    expect_value = false;
                }
                _ => {
                    return Err(TfSyntaxError::new(
                        start,
                        "decimal coefficient",
                        format!("'{tok}'"),
                    ))
                }
            }
        }
    }
    if out.is_empty() {
        return Err(TfSyntaxError::new(
            0,
            "at least one coefficient",
            "empty list",
        ));
    }
    if expect_value {
        return Err(TfSyntaxError::new(
            text.len(),
            "coefficient",
            "end of input",
        ));
    }
    Ok(out)
}

/// Builds a transfer function from numerator and denominator coefficient
/// lists (descending powers).
pub fn parse_coeff_lists(num_text: &str, den_text: &str) -> Result<ContinuousTransferFunction> {
    let num = parse_coefficient_list(num_text)?;
    let den = parse_coefficient_list(den_text)?;
    ContinuousTransferFunction::new(&num, &den)
}
