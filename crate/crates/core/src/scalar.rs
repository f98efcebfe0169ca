//! Exact scalars: rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{malformed, Result};

pub type Rational = BigRational;

/// An element of the Gaussian rationals, the scalar field of every computation.
pub type Scalar = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn real(r: Rational) -> Scalar {
    Complex::new(r, Rational::zero())
}

pub fn sc(n: i64) -> Scalar {
    real(int(n))
}

pub fn imag_unit() -> Scalar {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Squared modulus, which stays rational.
pub fn abs_sq(z: &Scalar) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    match BigRational::from_str(t) {
        Ok(r) => Ok(r),
        Err(_) => malformed(format!("not an exact rational: {s:?}")),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `a+bi` with exact rational parts; purely real values print as rationals.
pub fn format_scalar(z: &Scalar) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im = format_rational(&z.im.abs());
    let sign = if z.im.is_negative() { '-' } else { '+' };
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im}i")
        } else {
            format!("{im}i")
        }
    } else {
        format!("{}{sign}{im}i", format_rational(&z.re))
    }
}

/// Inverse of [`format_scalar`].
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(real(parse_rational(t)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, &body[i..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
    };
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text_round_trip() {
        let cases = [
            Complex::new(rat(1, 2), rat(0, 1)),
            Complex::new(rat(0, 1), rat(3, 1)),
            Complex::new(rat(-2, 3), rat(-5, 7)),
            Complex::new(rat(4, 1), rat(1, 1)),
            Complex::new(rat(0, 1), rat(-1, 1)),
        ];
        for z in cases {
            let text = format_scalar(&z);
            assert_eq!(parse_scalar(&text).unwrap(), z, "{text}");
        }
    }

    #[test]
    fn rejects_decimal_text() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn abs_sq_is_exact() {
        let z = Complex::new(rat(3, 5), rat(4, 5));
        assert_eq!(abs_sq(&z), int(1));
    }
}
