//! Exact rationals: construction, text parsing and decimal rendering.
//!
//! Every coordinate in the crate is a [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Nothing is ever
//! rounded; the only lossy operation is [`to_decimal`], which exists for human
//! readable duplicates in reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number (lowest terms, positive denominator).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// `numer / denom` reduced to lowest terms.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

fn parse_integer(text: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Invalid(whole.to_string()));
    }
    text.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Invalid(whole.to_string()))
}

fn parse_decimal(text: &str, whole: &str) -> Result<Rational, ParseRationalError> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(at) => {
            let exp: i32 = text[at + 1..]
                .parse()
                .map_err(|_| ParseRationalError::Invalid(whole.to_string()))?;
            (&text[..at], exp)
        }
        None => (text, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseRationalError::Invalid(whole.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Invalid(whole.to_string()));
    }
    let numer: BigInt = digits
        .parse()
        .map_err(|_| ParseRationalError::Invalid(whole.to_string()))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Parses an integer (`"-3"`), a decimal (`"0.25"`, `"1e-2"`) or a fraction
/// (`"-1/3"`) into an exact rational. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((numer, denom)) = trimmed.split_once('/') {
        let numer = parse_integer(numer.trim(), trimmed)?;
        let denom = parse_integer(denom.trim(), trimmed)?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(trimmed.to_string()));
        }
        return Ok(Rational::new(numer, denom));
    }
    if trimmed.contains(['.', 'e', 'E']) {
        return parse_decimal(trimmed, trimmed);
    }
    Ok(Rational::from_integer(parse_integer(trimmed, trimmed)?))
}

/// Canonical exact text: `"p/q"`, or `"p"` when the denominator is one.
pub fn to_exact(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering rounded (half away from zero) to `digits` significant
/// digits, trailing zeros trimmed. Computed exactly, so the output does not
/// depend on floating point behaviour.
pub fn to_decimal(value: &Rational, digits: u32) -> String {
    assert!(digits > 0, "at least one significant digit");
    if value.is_zero() {
        return "0".to_string();
    }
    let magnitude = value.abs();
    let ten = Rational::from_integer(BigInt::from(10u8));

    // exponent e with 10^e <= |v| < 10^(e+1)
    let mut exponent: i64 = 0;
    let mut probe = Rational::one();
    while probe > magnitude {
        probe /= &ten;
        exponent -= 1;
    }
    while &probe * &ten <= magnitude {
        probe *= &ten;
        exponent += 1;
    }

    let shift = digits as i64 - 1 - exponent;
    let scaled = if shift >= 0 {
        &magnitude * num_traits::pow(ten.clone(), shift as usize)
    } else {
        &magnitude / num_traits::pow(ten.clone(), (-shift) as usize)
    };
    let mut mantissa = round_half_up(&scaled);
    let mut shift = shift;
    if mantissa == num_traits::pow(BigInt::from(10u8), digits as usize) {
        mantissa /= BigInt::from(10u8);
        shift -= 1;
    }

    let text = mantissa.to_string();
    let mut rendered = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{text}{zeros}")
    } else {
        let shift = shift as usize;
        if text.len() > shift {
            let (whole, frac) = text.split_at(text.len() - shift);
            format!("{whole}.{frac}")
        } else {
            format!("0.{}{}", "0".repeat(shift - text.len()), text)
        }
    };
    if rendered.contains('.') {
        rendered = rendered.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if value.is_negative() {
        rendered.insert(0, '-');
    }
    rendered
}

fn round_half_up(value: &Rational) -> BigInt {
    let (quotient, remainder) = value.numer().div_rem(value.denom());
    if remainder.clone() * BigInt::from(2u8) >= *value.denom() {
        quotient + 1
    } else {
        quotient
    }
}

/// Lossy conversion for drawing.
pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational(" 1/3 ").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("2/6").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-4/-8").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
        assert_eq!(parse_rational("1.5E1").unwrap(), int(15));
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_rational("  "), Err(ParseRationalError::Empty));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        for bad in ["abc", "1/2/3", "1.2.3", "--1", ".", "1/x", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn exact_text_is_lowest_terms() {
        assert_eq!(to_exact(&rat(24, 14)), "12/7");
        assert_eq!(to_exact(&rat(8, 2)), "4");
        assert_eq!(to_exact(&rat(-5, 9)), "-5/9");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(12, 7), 12), "1.71428571429");
        assert_eq!(to_decimal(&rat(4, 9), 12), "0.444444444444");
        assert_eq!(to_decimal(&rat(-5, 9), 12), "-0.555555555556");
        assert_eq!(to_decimal(&int(4), 12), "4");
        assert_eq!(to_decimal(&int(0), 12), "0");
        assert_eq!(to_decimal(&rat(1, 1000), 3), "0.001");
        assert_eq!(to_decimal(&int(123456), 3), "123000");
        assert_eq!(to_decimal(&rat(9999, 1000), 3), "10");
        assert_eq!(to_decimal(&rat(1, 2), 1), "0.5");
    }
}
