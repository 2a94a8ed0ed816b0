//! Command-line number literals.
//!
//! Accepted forms: integers, fractions `p/q`, and decimals with an optional
//! exponent (`-1.25e-3`). All of these convert exactly to rationals. In f64
//! mode a complex literal such as `1.5-2i`, `3i` or `-i` is accepted too.

use dwpf_core::numerics::{BigRational, Complex64, Mode, Value};
use dwpf_core::{Error, Scalar};

fn invalid(s: &str, why: &str) -> Error {
    Error::InvalidInput(format!("cannot parse number {s:?}: {why}"))
}

fn split_sign(s: &str) -> (&str, &str) {
    match s.as_bytes().first() {
        Some(b'+') => ("", &s[1..]),
        Some(b'-') => ("-", &s[1..]),
        _ => ("", s),
    }
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses a real literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let (sp, p) = split_sign(p);
        let (sq, q) = split_sign(q);
        if !digits(p) || !digits(q) {
            return Err(invalid(s, "expected p/q with integer p and q"));
        }
        if q.bytes().all(|b| b == b'0') {
            return Err(invalid(s, "zero denominator"));
        }
        let negative = (sp == "-") != (sq == "-");
        let text = format!("{}{p}/{q}", if negative { "-" } else { "" });
        return text.parse().map_err(|_| invalid(s, "malformed fraction"));
    }

    let (sign, rest) = split_sign(s);
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(k) => {
            let (es, ed) = split_sign(&rest[k + 1..]);
            if !digits(ed) {
                return Err(invalid(s, "malformed exponent"));
            }
            let e: i64 = format!("{es}{ed}").parse().map_err(|_| invalid(s, "exponent out of range"))?;
            (&rest[..k], e)
        }
        None => (rest, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if (int.is_empty() && frac.is_empty()) || !(int.is_empty() || digits(int)) || !(frac.is_empty() || digits(frac)) {
        return Err(invalid(s, "expected a decimal or fraction"));
    }
    let scale = exponent - frac.len() as i64;
    if scale.abs() > 10_000 {
        return Err(invalid(s, "exponent out of range"));
    }
    let zeros = "0".repeat(scale.unsigned_abs() as usize);
    let text = if scale >= 0 {
        format!("{sign}{int}{frac}{zeros}")
    } else {
        format!("{sign}{int}{frac}/1{zeros}")
    };
    text.parse().map_err(|_| invalid(s, "malformed decimal"))
}

fn parse_real_f64(s: &str) -> Result<f64, Error> {
    let x = if s.contains('/') {
        Complex64::from_rational(&parse_rational(s)?).re
    } else {
        // validate the grammar, then let the standard library round
        parse_rational(s)?;
        s.trim().parse::<f64>().map_err(|_| invalid(s, "not a float"))?
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(s, "not finite"))
    }
}

/// Position of the sign that separates the real and imaginary parts.
fn imaginary_split(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real_f64(t)?, 0.0));
    };
    let (re, im) = match imaginary_split(body) {
        Some(k) => (parse_real_f64(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real_f64(other)?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses one literal in the given mode. Exact mode refuses complex input.
pub fn parse_number(s: &str, mode: Mode) -> Result<Value, Error> {
    match mode {
        Mode::Exact => {
            if s.trim().ends_with('i') {
                return Err(invalid(s, "complex values need --mode f64"));
            }
            parse_rational(s).map(Value::Exact)
        }
        Mode::F64 => parse_complex(s).map(Value::Float),
    }
}

/// Comma-separated list. An empty string is the empty list.
pub fn parse_list(s: &str, mode: Mode) -> Result<Vec<Value>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_number(x, mode)).collect()
}

/// The canonical literal for a value; parsing it gives the value back.
pub fn canonical(v: &Value) -> String {
    match v {
        Value::Exact(q) if q.is_integer() => q.numer().to_string(),
        Value::Exact(q) => format!("{}/{}", q.numer(), q.denom()),
        Value::Float(z) if z.im == 0.0 && z.im.is_sign_positive() => format!("{}", z.re),
        Value::Float(z) => {
            let sign = if z.im.is_sign_negative() { "" } else { "+" };
            format!("{}{sign}{}i", z.re, z.im)
        }
    }
}

pub fn canonical_list(values: &[Value]) -> String {
    values.iter().map(canonical).collect::<Vec<_>>().join(",")
}
