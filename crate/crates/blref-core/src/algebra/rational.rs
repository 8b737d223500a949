//! Helpers around arbitrary-precision rationals: exact parsing of literal
//! strings, canonical formatting, and a float conversion that survives
//! numerators far outside the `f64` range.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (the `num-rational` invariant).
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact rational literal: `"p"`, `"p/q"`, or a finite decimal
/// such as `"-0.25"`. Decimal literals are exact (`0.1` becomes `1/10`);
/// anything else is rejected.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let t = s.trim();
    let err = || Error::InvalidRational(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| err())?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let f: BigInt = frac_part.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mag = i.magnitude() * &scale.magnitude().clone() + f.magnitude();
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        return Ok(Rat::new(
            BigInt::from_biguint(sign, mag),
            scale,
        ));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts to `f64`, scaling by powers of two first so that huge
/// numerators/denominators do not collapse to `inf/inf`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Keep ~96 significant bits of each side and track the shifted exponent.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let sn = (nb - 96).max(0);
    let sd = (db - 96).max(0);
    let n = (r.numer() >> sn).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> sd).to_f64().unwrap_or(f64::NAN);
    let exp = sn - sd;
    if exp.abs() > 4000 {
        // Way outside the f64 range either direction.
        return if exp > 0 {
            if n.is_sign_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            0.0
        };
    }
    (n / d) * 2f64.powi(exp as i32)
}

/// Positive sign test without allocating.
pub fn rat_sign(r: &Rat) -> i32 {
    if r.numer().is_zero() {
        0
    } else if r.numer().is_negative() {
        -1
    } else {
        1
    }
}
