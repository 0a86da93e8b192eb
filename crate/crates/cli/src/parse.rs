//! Parsing of complex numbers and coefficient lists given on the command line.

use num_complex::Complex64;

/// Parses `"re,im"`, `"re+imi"`, `"re-imi"`, `"imi"` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(real(re, s)?, real(im, s)?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(&t, s)?, 0.0));
    };
    // the split is the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k], s)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => real(v, s)?,
    };
    Ok(Complex64::new(re, im))
}

fn real(v: &str, whole: &str) -> Result<f64, String> {
    let x: f64 = v
        .parse()
        .map_err(|_| format!("cannot parse {whole:?} as a complex number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite value in {whole:?}"))
    }
}

/// Parses a coefficient list. Entries are separated by `;` when any `;` is
/// present, so that `"re,im"` pairs can be used, and by `,` otherwise, in
/// which case each entry is a real or a `"re+imi"` literal.
pub fn parse_coeffs(s: &str) -> Result<Vec<Complex64>, String> {
    let sep = if s.contains(';') { ';' } else { ',' };
    let out = s
        .split(sep)
        .filter(|t| !t.trim().is_empty())
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("empty coefficient list".into());
    }
    Ok(out)
}
