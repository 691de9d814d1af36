//! Decimal rendering and parsing of balls.
//!
//! The midpoint is printed with one digit below the radius's leading digit,
//! so no digit is shown that the radius does not justify. The radius is
//! rounded up to two significant digits and absorbs the rendering error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ball::Ball;
use super::float::Float;
use crate::error::{Error, Result};

/// A ball as a pair of decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalBall {
    pub mid: String,
    pub rad: String,
}

fn pow10(k: u64) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// `floor(log10 q)` for `q > 0`.
pub(crate) fn floor_log10(q: &BigRational) -> i64 {
    let nb = q.numer().bits() as f64;
    let db = q.denom().bits() as f64;
    let mut e = ((nb - db) * std::f64::consts::LOG10_2).floor() as i64 - 1;
    loop {
        if scaled_cmp_pow10(q, e + 1) {
            e += 1;
        } else if !scaled_cmp_pow10(q, e) {
            e -= 1;
        } else {
            return e;
        }
    }
}

/// `q >= 10^e`.
fn scaled_cmp_pow10(q: &BigRational, e: i64) -> bool {
    if e >= 0 {
        q.numer() >= &(q.denom() * pow10(e as u64))
    } else {
        q.numer() * pow10((-e) as u64) >= *q.denom()
    }
}

fn mul_pow10(q: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        q * BigRational::from_integer(pow10(k as u64))
    } else {
        q / BigRational::from_integer(pow10((-k) as u64))
    }
}

fn round_half_up(q: &BigRational) -> BigInt {
    (q + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Integer `n` shown as `n * 10^-k` in fixed notation.
fn fixed_string(n: &BigInt, k: i64) -> String {
    let neg = n.is_negative();
    let mut digits = n.abs().to_string();
    let body = if k <= 0 {
        if !n.is_zero() {
            digits.push_str(&"0".repeat((-k) as usize));
        }
        digits
    } else {
        let k = k as usize;
        if digits.len() <= k {
            digits = format!("{}{}", "0".repeat(k - digits.len() + 1), digits);
        }
        let split = digits.len() - k;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Integer `n` with `sig` digits, value `n * 10^(e - sig + 1)`.
fn sci_string(n: &BigInt, e: i64) -> String {
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let body = if digits.len() > 1 {
        format!("{}.{}e{}", &digits[..1], &digits[1..], e)
    } else {
        format!("{digits}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Upper bound of a non-negative rational with two significant digits.
fn render_radius(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let e = floor_log10(r);
    let scaled = mul_pow10(r, 1 - e);
    let n = scaled.ceil().to_integer();
    // ceil may carry into a third digit (e.g. 99.2 -> 100)
    let (n, e) = if n >= BigInt::from(100) {
        ((n + 9) / 10, e + 1)
    } else {
        (n, e)
    };
    if (-4..=6).contains(&e) {
        fixed_string(&n, 1 - e)
    } else {
        sci_string(&n, e)
    }
}

/// Renders a ball; the radius string bounds the true error of the midpoint
/// string.
pub fn render(b: &Ball) -> DecimalBall {
    if !b.is_finite() {
        return DecimalBall {
            mid: "0".into(),
            rad: "inf".into(),
        };
    }
    let mid = b.mid().to_rational();
    let rad = Float::from_mag(b.rad()).to_rational();
    // digits after the point
    let max_sig = (b.prec() as f64 * std::f64::consts::LOG10_2).ceil() as i64 + 1;
    let mid_e = if mid.is_zero() {
        0
    } else {
        floor_log10(&mid.abs())
    };
    let mut k = if rad.is_zero() {
        max_sig - 1 - mid_e
    } else {
        (1 - floor_log10(&rad)).min(max_sig - 1 - mid_e)
    };
    if mid.is_zero() && rad.is_zero() {
        k = 0;
    }
    let n = round_half_up(&mul_pow10(&mid, k));
    let shown = mul_pow10(&BigRational::from_integer(n.clone()), -k);
    let total_rad = &rad + (&mid - &shown).abs();
    let mid_str = if n.is_zero() {
        "0".to_string()
    } else {
        let e = floor_log10(&shown.abs());
        if (-6..=24).contains(&e) {
            let s = fixed_string(&n, k);
            trim_exact(s, total_rad.is_zero())
        } else {
            // n has e + k + 1 digits
            sci_string(&n, e)
        }
    };
    DecimalBall {
        mid: mid_str,
        rad: render_radius(&total_rad),
    }
}

fn trim_exact(s: String, exact: bool) -> String {
    if !exact || !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Exact rational from a decimal string such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..]
                .parse::<i64>()
                .map_err(|_| Error::parse(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::parse(format!("empty number {s:?}")));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(format!("not a decimal number: {s:?}")));
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().unwrap() / 10;
    let q = mul_pow10(
        &BigRational::from_integer(digits),
        exp - frac_part.len() as i64,
    );
    Ok(if neg { -q } else { q })
}

/// Rational parsed from `p/q`, an integer, or a decimal string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(s)
}

/// `p/q` string, or the bare integer when `q = 1`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl DecimalBall {
    /// Ball enclosing the rendered interval.
    pub fn to_ball(&self, prec: u32) -> Result<Ball> {
        if self.rad == "inf" {
            return Ok(Ball::indeterminate(prec));
        }
        let mid = parse_decimal(&self.mid)?;
        let rad = parse_decimal(&self.rad)?;
        if rad.is_negative() {
            return Err(Error::parse("negative radius"));
        }
        let b = Ball::from_rational(&mid, prec);
        let (r, err) = Float::from_rational(&rad, 64);
        let r = r.mag_upper().add(err);
        Ok(b.with_radius(r))
    }
}

impl Serialize for Ball {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        render(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ball {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Ball, D::Error> {
        let db = DecimalBall::deserialize(d)?;
        db.to_ball(super::ball::DEFAULT_PREC.max(256))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Mag;
    use crate::numeric::elementary::pi;

    #[test]
    fn pi_digits() {
        let d = render(&pi(64));
        assert!(d.mid.starts_with("3.14159265358979"), "{d:?}");
        let b = d.to_ball(128).unwrap();
        assert!(b.contains_float(pi(200).mid()));
    }

    #[test]
    fn exact_values_print_exactly() {
        let d = render(&Ball::from_i64(1728, 64));
        assert_eq!(d.mid, "1728");
        assert_eq!(d.rad, "0");
        let d = render(&Ball::from_f64(0.75, 64));
        assert_eq!(d.mid, "0.75");
    }

    #[test]
    fn digits_follow_radius() {
        let b = Ball::new(Float::from_f64(1.23456789), Mag::from_f64_up(1e-3), 128);
        let d = render(&b);
        assert_eq!(d.mid, "1.2346");
        assert!(d.rad.starts_with("0.001"));
        assert!(d.to_ball(128).unwrap().contains_float(b.mid()));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(
            parse_decimal("-1.5e-2").unwrap(),
            BigRational::new((-3).into(), 200.into())
        );
        assert!(parse_decimal("abc").is_err());
    }
}
