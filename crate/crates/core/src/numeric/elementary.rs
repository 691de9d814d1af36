//! exp, log, sin/cos and the constants pi, log 2 on balls.
//!
//! Series are summed in fixed point on `BigInt` with an explicit ulp count,
//! then wrapped as balls with the accumulated error as radius.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::float::Float;
use super::mag::Mag;

fn round_up_prec(prec: u32) -> u32 {
    (prec + 63) / 64 * 64
}

type ConstCache = OnceLock<Mutex<HashMap<u32, Ball>>>;

fn cached(cache: &'static ConstCache, prec: u32, compute: fn(u32) -> Ball) -> Ball {
    let p = round_up_prec(prec);
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = map.lock().unwrap().get(&p) {
        return b.clone().set_prec(prec);
    }
    let b = compute(p);
    map.lock().unwrap().insert(p, b.clone());
    b.set_prec(prec)
}

/// `2 * atanh(1/q) * 2^w` in fixed point, with its ulp error bound.
fn atanh_recip_fixed(q: u64, w: u64) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let q2 = BigInt::from(q) * q;
    let mut p = &one / q;
    let mut sum = p.clone();
    let mut n: u64 = 1;
    let mut ulps = 1;
    loop {
        p = &p / &q2;
        if p.is_zero() {
            break;
        }
        sum += &p / (2 * n + 1);
        n += 1;
        ulps += 2;
    }
    (sum << 1u32, 2 * ulps + 2)
}

fn ln2_compute(prec: u32) -> Ball {
    let w = prec as u64 + 32;
    let (v, ulps) = atanh_recip_fixed(3, w);
    fixed_to_ball(v, w, ulps, prec)
}

fn pi_compute(prec: u32) -> Ball {
    let w = prec as u64 + 32;
    let (a5, e5) = atan_recip_fixed(5, w);
    let (a239, e239) = atan_recip_fixed(239, w);
    let v = (a5 << 4u32) - (a239 << 2u32);
    fixed_to_ball(v, w, 16 * e5 + 4 * e239, prec)
}

/// `atan(1/q) * 2^w` in fixed point.
fn atan_recip_fixed(q: u64, w: u64) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let q2 = BigInt::from(q) * q;
    let mut p = &one / q;
    let mut sum = p.clone();
    let mut n: u64 = 1;
    let mut ulps = 1;
    loop {
        p = &p / &q2;
        if p.is_zero() {
            break;
        }
        let t = &p / (2 * n + 1);
        if n % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        n += 1;
        ulps += 2;
    }
    (sum, ulps + 1)
}

fn fixed_to_ball(v: BigInt, w: u64, ulps: u64, prec: u32) -> Ball {
    let mid = Float::from_parts(v, -(w as i64));
    let rad = Mag::from_u64(ulps).mul_2exp(-(w as i64));
    let (m, err) = mid.round(prec);
    Ball::new(m, rad.add(err), prec)
}

static LN2: ConstCache = OnceLock::new();
static PI: ConstCache = OnceLock::new();

pub fn ln2(prec: u32) -> Ball {
    cached(&LN2, prec, ln2_compute)
}

pub fn pi(prec: u32) -> Ball {
    cached(&PI, prec, pi_compute)
}

/// `a * b / 2^w` truncated toward zero, so repeated products reach zero.
fn mul_shr(a: &BigInt, b: &BigInt, w: u64) -> BigInt {
    let p = a * b;
    if p.is_negative() {
        -((-p) >> w)
    } else {
        p >> w
    }
}

/// Fixed-point value of a `Float` truncated to `w` fractional bits.
fn to_fixed(x: &Float, w: u64) -> BigInt {
    let e = x.exponent() + w as i64;
    if e >= 0 {
        x.mantissa() << e as u64
    } else {
        x.mantissa() >> (-e) as u64
    }
}

/// `exp(m)` for an exact point with `|m| < 1`, as fixed point with ulp bound.
fn exp_small_fixed(t: &Float, w: u64) -> (BigInt, u64) {
    let s: u64 = ((w as f64).sqrt() / 2.0).clamp(4.0, 40.0) as u64;
    let ww = w + s + 16;
    let one = BigInt::one() << ww;
    let tt = to_fixed(t, ww) >> s;
    let mut sum = one.clone();
    let mut term = one;
    let mut n: u64 = 1;
    while !term.is_zero() {
        term = mul_shr(&term, &tt, ww) / n;
        sum += &term;
        n += 1;
    }
    for _ in 0..s {
        sum = &sum * &sum >> ww;
    }
    // relative error doubles per squaring; base error is ~2 ulps per term
    let ulps = (4 * n + 24) << (s + 2);
    let shift = ww - w;
    (sum >> shift, (ulps >> shift) + 2)
}

/// `exp` of a ball. Panics never; returns an unbounded ball if the argument is
/// too large for the exponent range.
pub fn exp(x: &Ball) -> Ball {
    let prec = x.prec();
    if !x.is_finite() {
        return Ball::indeterminate(prec);
    }
    if x.rad() > Mag::pow2(-1) {
        let lo = exp(&Ball::exact(x.lower(), prec));
        let hi = exp(&Ball::exact(x.upper(), prec));
        if !lo.is_finite() || !hi.is_finite() {
            return Ball::indeterminate(prec);
        }
        return Ball::from_endpoints(&lo.lower(), &hi.upper(), prec);
    }
    let y = exp_point(x.mid(), prec);
    if x.rad().is_zero() || !y.is_finite() {
        return y;
    }
    // e^r - 1 <= 2r for r <= 1/2
    let extra = y.mag_upper().mul(x.rad().mul_2exp(1));
    y.with_radius(extra)
}

fn exp_point(m: &Float, prec: u32) -> Ball {
    if m.is_zero() {
        return Ball::one(prec);
    }
    if m.top() > 40 {
        return Ball::indeterminate(prec);
    }
    let k = (m.to_f64() / std::f64::consts::LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros() as u32;
    let wp = prec + kbits + 24;
    let l2 = ln2(wp);
    let t = Ball::exact(m.clone(), wp).sub_ball(&l2.mul_i64(k));
    let w = wp as u64;
    let (v, ulps) = exp_small_fixed(t.mid(), w);
    let mut y = fixed_to_ball(v, w, ulps, wp);
    // account for the reduced argument's radius
    let extra = y.mag_upper().mul(t.rad().mul_2exp(1));
    y = y.with_radius(extra).mul_2exp(k);
    let (mid, err) = y.mid().round(prec);
    Ball::new(mid, y.rad().add(err), prec)
}

/// `log` of a fixed-point value in `[1/2, 2)`.
fn ln_near_one_fixed(f: &BigInt, w: u64) -> (BigInt, u64) {
    let r: u64 = 8;
    let ww = w + r + 16;
    let mut x = f << (ww - w);
    for _ in 0..r {
        x = (x << ww).sqrt();
    }
    let one = BigInt::one() << ww;
    let z = ((&x - &one) << ww) / (&x + &one);
    let z2 = &z * &z >> ww;
    let mut p = z.clone();
    let mut sum = z;
    let mut n: u64 = 1;
    while !p.is_zero() {
        p = mul_shr(&p, &z2, ww);
        sum += &p / (2 * n + 1);
        n += 1;
    }
    let res = sum << (r + 1);
    let ulps = (2 * n + 2 * r + 16) << (r + 2);
    let shift = ww - w;
    (res >> shift, (ulps >> shift) + 2)
}

fn ln_point(m: &Float, prec: u32) -> Ball {
    let wp = prec + 32;
    let w = wp as u64;
    // m = 2^e * f with f in [1, 2)
    let e = m.top() - 1;
    let f = m.mul_2exp(-e);
    let mut fx = to_fixed(&f, w);
    let mut e = e;
    // move f to [1/sqrt2, sqrt2) for a smaller series argument
    let sqrt2_fixed = (BigInt::from(2) << (2 * w)).sqrt();
    if fx > sqrt2_fixed {
        fx >>= 1u32;
        e += 1;
    }
    let (v, ulps) = ln_near_one_fixed(&fx, w);
    let lf = fixed_to_ball(v, w, ulps, wp);
    let trunc = Mag::pow2(-(w as i64)).mul_2exp(1);
    let lf = lf.with_radius(trunc);
    let res = lf.add_ball(&ln2(wp).mul_i64(e));
    let (mid, err) = res.mid().round(prec);
    Ball::new(mid, res.rad().add(err), prec)
}

/// Natural logarithm; unbounded if the ball is not strictly positive.
pub fn ln(x: &Ball) -> Ball {
    let prec = x.prec();
    if !x.is_positive() {
        return Ball::indeterminate(prec);
    }
    let y = ln_point(x.mid(), prec);
    if x.rad().is_zero() {
        return y;
    }
    let lower = x.mid().mag_lower().sub_lower(x.rad());
    y.with_radius(x.rad().div(lower))
}

/// `(sin x, cos x)`.
pub fn sin_cos(x: &Ball) -> (Ball, Ball) {
    let prec = x.prec();
    if !x.is_finite() {
        return (Ball::indeterminate(prec), Ball::indeterminate(prec));
    }
    if x.mid().top() > 60 {
        let unit = Ball::new(Float::zero(), Mag::from_u64(1), prec);
        return (unit.clone(), unit);
    }
    let (s, c) = sin_cos_point(x.mid(), prec);
    (s.with_radius(x.rad()), c.with_radius(x.rad()))
}

fn sin_cos_point(m: &Float, prec: u32) -> (Ball, Ball) {
    if m.is_zero() {
        return (Ball::zero(prec), Ball::one(prec));
    }
    let k = (m.to_f64() / std::f64::consts::TAU).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros() as u32;
    let wp = prec + kbits + 24;
    let t = Ball::exact(m.clone(), wp).sub_ball(&pi(wp).mul_i64(2 * k));
    let s: u64 = 12;
    let w = wp as u64 + 2 * s + 16;
    let one = BigInt::one() << w;
    let tt = to_fixed(t.mid(), w) >> s;
    let t2 = &tt * &tt >> w;
    // sin and cos Taylor series at t / 2^s
    let mut sn = tt.clone();
    let mut term = tt.clone();
    let mut n: u64 = 1;
    while !term.is_zero() {
        term = -mul_shr(&term, &t2, w) / ((2 * n) * (2 * n + 1));
        sn += &term;
        n += 1;
    }
    let mut cs = one.clone();
    let mut term = one.clone();
    let mut k2: u64 = 1;
    while !term.is_zero() {
        term = -mul_shr(&term, &t2, w) / ((2 * k2 - 1) * (2 * k2));
        cs += &term;
        k2 += 1;
    }
    for _ in 0..s {
        let ns = (&sn * &cs) >> (w - 1);
        let nc = &one - ((&sn * &sn) >> (w - 1));
        sn = ns;
        cs = nc;
    }
    // errors grow at most fourfold per doubling step
    let ulps = (2 * (n + k2) + 16) << (2 * s + 1);
    let trunc = t.rad().add(Mag::pow2(-(w as i64) + s as i64));
    let sb = fixed_to_ball(sn, w, ulps, prec).with_radius(trunc);
    let cb = fixed_to_ball(cs, w, ulps, prec).with_radius(trunc);
    (sb, cb)
}

/// `x^y` for `x > 0`.
pub fn pow(x: &Ball, y: &Ball) -> Ball {
    exp(&ln(x).mul_ball(y))
}

/// `log10`, used by renderers of astronomically large quantities.
pub fn log10(x: &Ball) -> Ball {
    let ten = Ball::from_i64(10, x.prec());
    ln(x).div_ball(&ln(&ten))
}

/// `log` of a positive integer, exact midpoint input.
pub fn ln_bigint(n: &BigInt, prec: u32) -> Ball {
    assert!(n.is_positive(), "log of non-positive integer");
    if n.is_one() {
        return Ball::zero(prec);
    }
    ln(&Ball::from_bigint(n, prec))
}

/// `log |q|` of a nonzero rational as `log |num| - log den`.
pub fn ln_rational(q: &num_rational::BigRational, prec: u32) -> Ball {
    let num = q.numer().abs();
    let den = q.denom().abs();
    let a = ln_bigint(&num, prec + 8);
    let b = ln_bigint(&den, prec + 8);
    a.sub_ball(&b).set_prec(prec)
}

pub fn f64_of(b: &Ball) -> f64 {
    b.mid().to_f64()
}

/// Exact integer square root floor, used by discriminant code.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(b: &Ball, v: f64, tol: f64) -> bool {
        (b.mid_f64() - v).abs() < tol && b.rad_f64() < 1e-25
    }

    #[test]
    fn constants() {
        assert!(close(&pi(128), std::f64::consts::PI, 1e-15));
        assert!(close(&ln2(128), std::f64::consts::LN_2, 1e-15));
        let p = pi(2000);
        assert!(p.rad().log2_ceil() < -1990);
    }

    #[test]
    fn exp_and_log_are_inverse() {
        for v in [-30.5, -1.0, -1e-6, 0.3, 1.0, 2.0, 17.25] {
            let x = Ball::from_f64(v, 200);
            let e = exp(&x);
            assert!((e.mid_f64() - v.exp()).abs() <= 1e-12 * v.exp());
            let back = ln(&e);
            assert!(back.contains_float(&Float::from_f64(v)), "{v}: {back:?}");
            assert!(back.rad_f64() < 1e-50);
        }
    }

    #[test]
    fn log_values() {
        let l = ln(&Ball::from_i64(1728, 300));
        assert!((l.mid_f64() - 1728f64.ln()).abs() < 1e-14);
        let l = ln(&Ball::from_f64(0.75, 300));
        assert!((l.mid_f64() - 0.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn sin_cos_pythagoras() {
        for v in [0.1, 1.0, 3.0, -7.5, 100.0] {
            let (s, c) = sin_cos(&Ball::from_f64(v, 256));
            assert!((s.mid_f64() - v.sin()).abs() < 1e-13);
            assert!((c.mid_f64() - v.cos()).abs() < 1e-13);
            let one = s.sqr().add_ball(&c.sqr());
            assert!(one.contains_bigint(&BigInt::one()));
            assert!(one.rad_f64() < 1e-60);
        }
    }

    #[test]
    fn e_squared() {
        let e2 = exp(&Ball::from_i64(2, 128));
        assert!((e2.mid_f64() - 7.38905609893065).abs() < 1e-13);
    }
}
