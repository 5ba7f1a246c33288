//! Value parsers for command-line literals.

use std::str::FromStr;

use nestrad_core::{RationalIndex, C64};

/// Parses `3`, `-2.5`, `1e-3`, `2i`, `-i`, `1+2i`, `0.5-1e-2i`.
pub fn complex(s: &str) -> Result<C64, String> {
    let bad = || format!("cannot parse complex literal `{s}` (expected re, re+imi or imi)");
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(C64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let z = C64::new(re, im);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(z)
}

/// A comma-separated list of complex literals.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeffs(pub Vec<C64>);

pub fn complex_list(s: &str) -> Result<Coeffs, String> {
    s.split(',').map(complex).collect::<Result<_, _>>().map(Coeffs)
}

pub fn rational(s: &str) -> Result<RationalIndex, String> {
    RationalIndex::from_str(s).map_err(|e| e.to_string())
}

/// `lo,hi` with `lo ≤ hi`.
pub fn range(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("expected `lo,hi`, got `{s}`"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("range `{s}` must be finite with lo ≤ hi"));
    }
    Ok((lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orders(pub Vec<usize>);

pub fn usize_list(s: &str) -> Result<Orders, String> {
    s.split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| format!("bad integer `{v}`")))
        .collect::<Result<_, _>>()
        .map(Orders)
}
