//! Text syntax for complex amplitudes and `alpha:beta` state pairs.
//!
//! ```text
//! amplitude := real | imag | real ("+" | "-") [unsigned] "i"
//! imag      := ["+" | "-"] [unsigned] "i"
//! real      := ["+" | "-"] unsigned
//! unsigned  := decimal literal with optional exponent, e.g. 0.6, .5, 1e-3
//! pair      := amplitude ":" amplitude
//! ```
//!
//! A bare `i` means a coefficient of one. The canonical form printed by
//! [`format_amplitude`] uses the shortest decimal that round-trips, drops
//! zero parts, and writes `i` rather than `1i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::teleport::InputState;

fn invalid(token: &str, reason: &'static str) -> Error {
    Error::InvalidAmplitude {
        token: token.to_string(),
        reason,
    }
}

fn parse_unsigned(s: &str, token: &str) -> Result<f64> {
    let literal = s
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
    if !literal
        || !s
            .bytes()
            .next()
            .is_some_and(|b| b.is_ascii_digit() || b == b'.')
    {
        return Err(invalid(token, "expected a decimal number"));
    }
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| invalid(token, "expected a decimal number"))
}

/// Parses an optional sign followed by an optional magnitude; an empty
/// magnitude is 1 when `allow_unit` is set.
fn parse_signed(s: &str, token: &str, allow_unit: bool) -> Result<f64> {
    let (sign, rest) = match s.as_bytes().first() {
        Some(b'-') => (-1.0, &s[1..]),
        Some(b'+') => (1.0, &s[1..]),
        _ => (1.0, s),
    };
    if rest.is_empty() {
        return if allow_unit {
            Ok(sign)
        } else {
            Err(invalid(token, "missing number"))
        };
    }
    Ok(sign * parse_unsigned(rest, token)?)
}

/// Index of the sign separating real and imaginary parts, skipping a
/// leading sign and exponent signs.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

pub fn parse_amplitude(token: &str) -> Result<Complex64> {
    let s = token.trim();
    if s.is_empty() {
        return Err(invalid(token, "empty amplitude"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_signed(s, token, false)?, 0.0));
    };
    let z = match split_point(body) {
        Some(k) => Complex64::new(
            parse_signed(&body[..k], token, false)?,
            parse_signed(&body[k..], token, true)?,
        ),
        None => Complex64::new(0.0, parse_signed(body, token, true)?),
    };
    Ok(z)
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn format_amplitude(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    let imag = |v: f64| {
        if v == 1.0 {
            "i".to_string()
        } else if v == -1.0 {
            "-i".to_string()
        } else {
            format!("{v}i")
        }
    };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => imag(im),
        (false, false) if im < 0.0 => format!("{re}{}", imag(im)),
        (false, false) => format!("{re}+{}", imag(im)),
    }
}

/// `format_amplitude(parse_amplitude(token))`.
pub fn canonical_amplitude(token: &str) -> Result<String> {
    parse_amplitude(token).map(format_amplitude)
}

/// Builds a state from two amplitudes, rescaling only when `normalize` is
/// set and otherwise rejecting inputs off the unit sphere.
pub fn make_state(
    alpha: Complex64,
    beta: Complex64,
    normalize: bool,
) -> Result<InputState<Complex64>> {
    if normalize {
        InputState::normalized(alpha, beta)
    } else {
        InputState::new(alpha, beta)
    }
}

/// Parses `alpha:beta`.
pub fn parse_state_pair(token: &str, normalize: bool) -> Result<InputState<Complex64>> {
    let (a, b) = token
        .split_once(':')
        .ok_or_else(|| invalid(token, "expected a pair written alpha:beta"))?;
    make_state(parse_amplitude(a)?, parse_amplitude(b)?, normalize)
}

/// Parses a comma-separated list of `alpha:beta` pairs.
pub fn parse_state_list(list: &str, normalize: bool) -> Result<Vec<InputState<Complex64>>> {
    list.split(',')
        .map(|t| parse_state_pair(t, normalize))
        .collect()
}

/// `alpha:beta` in canonical form.
pub fn state_label(state: &InputState<Complex64>) -> String {
    format!(
        "{}:{}",
        format_amplitude(*state.alpha()),
        format_amplitude(*state.beta())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_documented_forms() {
        let cases = [
            ("0.6", c(0.6, 0.0)),
            ("-.5", c(-0.5, 0.0)),
            ("0.6+0.8i", c(0.6, 0.8)),
            ("0.6-0.8i", c(0.6, -0.8)),
            ("0.8i", c(0.0, 0.8)),
            ("-i", c(0.0, -1.0)),
            ("i", c(0.0, 1.0)),
            ("1e-3+2E+1i", c(1e-3, 20.0)),
            ("1-i", c(1.0, -1.0)),
            (" 0.6 ", c(0.6, 0.0)),
        ];
        for (token, want) in cases {
            assert_eq!(parse_amplitude(token).unwrap(), want, "{token}");
        }
    }

    #[test]
    fn rejects_malformed_tokens() {
        for token in [
            "",
            "abc",
            "0.6+",
            "inf",
            "nan",
            "0.6+0.8j",
            "1..2",
            "+",
            "0.6+-0.8i",
            "i0.5",
        ] {
            let err = parse_amplitude(token).unwrap_err();
            assert!(
                matches!(&err, Error::InvalidAmplitude { token: t, .. } if t == token),
                "{token}: {err}"
            );
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_amplitude("0.60").unwrap(), "0.6");
        assert_eq!(canonical_amplitude("0+0.8i").unwrap(), "0.8i");
        assert_eq!(canonical_amplitude("1.0i").unwrap(), "i");
        assert_eq!(canonical_amplitude("-0").unwrap(), "0");
        assert_eq!(canonical_amplitude("0.6-1i").unwrap(), "0.6-i");
        assert_eq!(canonical_amplitude("+.5e1+0i").unwrap(), "5");
    }

    #[test]
    fn pairs_and_normalization() {
        let s = parse_state_pair("0.6:0.8i", false).unwrap();
        assert_eq!(state_label(&s), "0.6:0.8i");
        assert!(matches!(
            parse_state_pair("1:1", false),
            Err(Error::NotNormalized(_))
        ));
        let n = parse_state_pair("1:1", true).unwrap();
        assert!((n.alpha().re - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
        assert!(parse_state_pair("0:0", true).is_err());
        let err = parse_state_list("1:0,0.6:x", false).unwrap_err();
        assert!(err.to_string().contains("`x`"));
        assert!(matches!(
            parse_state_pair("0.6", false),
            Err(Error::InvalidAmplitude { .. })
        ));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            Just(0.0),
            Just(1.0),
            Just(-1.0),
            -1e6..1e6f64,
            any::<f64>().prop_filter("finite", |x| x.is_finite())
        ]
    }

    proptest! {
        #[test]
        fn format_round_trips(re in finite(), im in finite()) {
            let z = c(re, im);
            let text = format_amplitude(z);
            let back = parse_amplitude(&text).unwrap();
            prop_assert_eq!(back, c(clean(re), clean(im)), "{}", text);
            prop_assert_eq!(canonical_amplitude(&text).unwrap(), text);
        }
    }
}
