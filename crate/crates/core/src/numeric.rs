//! Exact decimal numerals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Parses `-?digits(.digits)?(/digits)?` into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num_part, den_part) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let mut value = parse_unsigned_decimal(num_part)?;
    if let Some(d) = den_part {
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let den: BigInt = d.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        value /= BigRational::from_integer(den);
    }
    Some(if negative { -value } else { value })
}

fn parse_unsigned_decimal(text: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if text.contains('.') && (frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(BigRational::new(numer, denom))
}

/// Renders a rational as a terminating decimal when one exists, otherwise as
/// `p/q`. The output always reparses with [`parse_decimal`].
pub fn render_decimal(value: &BigRational) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let numer = abs.numer().clone();
    let denom = abs.denom().clone();

    let mut twos = 0usize;
    let mut fives = 0usize;
    let mut rest = denom.clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    let sign = if negative { "-" } else { "" };
    if !rest.is_one() {
        return format!("{sign}{numer}/{denom}");
    }
    let places = twos.max(fives);
    if places == 0 {
        return format!("{sign}{numer}");
    }
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = numer * &scale / denom;
    let digits = scaled.to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    format!("{sign}{int_part}.{frac_part}")
}
