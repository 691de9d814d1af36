//! Real ball arithmetic: a dyadic midpoint with an upward-rounded radius.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::float::Float;
use super::mag::Mag;

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 128;

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    mid: Float,
    rad: Mag,
    prec: u32,
}

/// Certified enclosure returned by every height computation.
pub type CertifiedValue = Ball;

impl Ball {
    pub fn new(mid: Float, rad: Mag, prec: u32) -> Ball {
        Ball { mid, rad, prec }
    }

    pub fn exact(mid: Float, prec: u32) -> Ball {
        Ball::new(mid, Mag::ZERO, prec)
    }

    pub fn zero(prec: u32) -> Ball {
        Ball::exact(Float::zero(), prec)
    }

    pub fn one(prec: u32) -> Ball {
        Ball::exact(Float::one(), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Ball {
        Ball::exact(Float::from_i64(v), prec)
    }

    /// Integers are kept exact regardless of size.
    pub fn from_bigint(v: &BigInt, prec: u32) -> Ball {
        Ball::exact(Float::from_bigint(v), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Ball {
        Ball::exact(Float::from_f64(x), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let (mid, err) = Float::from_rational(q, prec);
        Ball::new(mid, err, prec)
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Ball {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mid = lo.midpoint(hi);
        let rad = hi.sub(&mid).mag_upper();
        Ball::new(mid, rad, prec)
    }

    /// Ball with `[0, 0]` widened by `rad`.
    pub fn with_radius(mut self, extra: Mag) -> Ball {
        self.rad = self.rad.add(extra);
        self
    }

    pub fn indeterminate(prec: u32) -> Ball {
        Ball::new(Float::zero(), Mag::INF, prec)
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn set_prec(mut self, prec: u32) -> Ball {
        self.prec = prec;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.rad.is_finite()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_ball(&self) -> Ball {
        Ball::exact(self.mid.clone(), self.prec)
    }

    /// Lower endpoint, rounded down.
    pub fn lower(&self) -> Float {
        if self.rad.is_inf() {
            panic!("lower endpoint of an unbounded ball");
        }
        self.mid.sub(&Float::from_mag(self.rad))
    }

    /// Upper endpoint, rounded up.
    pub fn upper(&self) -> Float {
        if self.rad.is_inf() {
            panic!("upper endpoint of an unbounded ball");
        }
        self.mid.add(&Float::from_mag(self.rad))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        self.mid.mag_upper().add(self.rad)
    }

    /// Lower bound on `|x|` over the ball.
    pub fn mag_lower(&self) -> Mag {
        self.mid.mag_lower().sub_lower(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        !self.rad.is_finite() || self.mid.mag_lower() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.rad.is_finite() && !self.mid.is_negative() && !self.mid.is_zero() && self.mid.mag_lower() > self.rad
    }

    pub fn is_negative(&self) -> bool {
        self.rad.is_finite() && self.mid.is_negative() && self.mid.mag_lower() > self.rad
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        if !self.is_finite() {
            return true;
        }
        self.mid.sub(x).mag_upper() <= self.rad && &self.lower() <= x && x <= &self.upper()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        if !self.is_finite() {
            return true;
        }
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        &lo <= q && q <= &hi
    }

    pub fn contains_bigint(&self, n: &BigInt) -> bool {
        self.contains_float(&Float::from_bigint(n))
    }

    /// Whether the two balls intersect.
    pub fn overlaps(&self, o: &Ball) -> bool {
        if !self.is_finite() || !o.is_finite() {
            return true;
        }
        self.lower() <= o.upper() && o.lower() <= self.upper()
    }

    /// `self <= o` holds for every pair of points in the balls.
    pub fn certainly_le(&self, o: &Ball) -> bool {
        self.is_finite() && o.is_finite() && self.upper() <= o.lower()
    }

    pub fn certainly_lt(&self, o: &Ball) -> bool {
        self.is_finite() && o.is_finite() && self.upper() < o.lower()
    }

    /// `self <= o` is consistent with the enclosures.
    pub fn possibly_le(&self, o: &Ball) -> bool {
        !self.is_finite() || !o.is_finite() || self.lower() <= o.upper()
    }

    /// The unique integer inside the ball, if the ball is narrower than 1/2
    /// and contains one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        if !self.is_finite() || self.rad >= Mag::pow2(-1) {
            return None;
        }
        let n = self.mid.round_to_integer();
        if self.contains_bigint(&n) {
            Some(n)
        } else {
            None
        }
    }

    fn finish(mid: Float, rad: Mag, prec: u32) -> Ball {
        let (m, err) = mid.round(prec);
        Ball::new(m, rad.add(err), prec)
    }

    pub fn add_ball(&self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        let (m, err) = self.mid.add_round(&o.mid, prec);
        Ball::new(m, self.rad.add(o.rad).add(err), prec)
    }

    pub fn sub_ball(&self, o: &Ball) -> Ball {
        self.add_ball(&o.neg_ball())
    }

    pub fn neg_ball(&self) -> Ball {
        Ball::new(self.mid.neg(), self.rad, self.prec)
    }

    pub fn mul_ball(&self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        let mid = self.mid.mul(&o.mid);
        let rad = self
            .mid
            .mag_upper()
            .mul(o.rad)
            .add(o.mid.mag_upper().mul(self.rad))
            .add(self.rad.mul(o.rad));
        Ball::finish(mid, rad, prec)
    }

    pub fn sqr(&self) -> Ball {
        let mid = self.mid.mul(&self.mid);
        let rad = self
            .mid
            .mag_upper()
            .mul(self.rad)
            .mul_2exp(1)
            .add(self.rad.mul(self.rad));
        Ball::finish(mid, rad, self.prec)
    }

    pub fn div_ball(&self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        if o.contains_zero() {
            return Ball::indeterminate(prec);
        }
        let (q, err) = self.mid.div(&o.mid, prec);
        if self.rad.is_zero() && o.rad.is_zero() {
            return Ball::new(q, err, prec);
        }
        let b_lo = o.mid.mag_lower();
        let num = self
            .mid
            .mag_upper()
            .mul(o.rad)
            .add(b_lo_upper(&o.mid).mul(self.rad));
        let den = b_lo.mul_lower(b_lo.sub_lower(o.rad));
        Ball::new(q, err.add(num.div(den)), prec)
    }

    pub fn mul_2exp(&self, e: i64) -> Ball {
        Ball::new(self.mid.mul_2exp(e), self.rad.mul_2exp(e), self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul_ball(&Ball::from_i64(k, self.prec))
    }

    pub fn div_i64(&self, k: i64) -> Ball {
        self.div_ball(&Ball::from_i64(k, self.prec))
    }

    pub fn pow_u64(&self, mut e: u64) -> Ball {
        let mut base = self.clone();
        let mut acc = Ball::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ball(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Enclosure of `|x|`.
    pub fn abs(&self) -> Ball {
        if !self.contains_zero() {
            return if self.mid.is_negative() {
                self.neg_ball()
            } else {
                self.clone()
            };
        }
        if !self.is_finite() {
            return self.clone();
        }
        let hi = Float::from_mag(self.mag_upper());
        Ball::from_endpoints(&Float::zero(), &hi, self.prec)
    }

    /// Enclosure of `max(x, y)`.
    pub fn max_ball(&self, o: &Ball) -> Ball {
        if !self.is_finite() || !o.is_finite() {
            return Ball::indeterminate(self.prec.max(o.prec));
        }
        if self.certainly_le(o) {
            return o.clone();
        }
        if o.certainly_le(self) {
            return self.clone();
        }
        let lo = Float::max(&self.lower(), &o.lower());
        let hi = Float::max(&self.upper(), &o.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(o.prec))
    }

    pub fn min_ball(&self, o: &Ball) -> Ball {
        self.neg_ball().max_ball(&o.neg_ball()).neg_ball()
    }

    /// Enclosure of `max(x, 0)`.
    pub fn clamp_nonneg(&self) -> Ball {
        self.max_ball(&Ball::zero(self.prec))
    }

    /// Smallest ball containing both.
    pub fn union(&self, o: &Ball) -> Ball {
        if !self.is_finite() || !o.is_finite() {
            return Ball::indeterminate(self.prec.max(o.prec));
        }
        let lo = Float::min(&self.lower(), &o.lower());
        let hi = Float::max(&self.upper(), &o.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(o.prec))
    }

    pub fn sqrt(&self) -> Ball {
        let prec = self.prec;
        if !self.is_finite() {
            return Ball::indeterminate(prec);
        }
        if self.is_exact() {
            if self.mid.is_negative() {
                return Ball::indeterminate(prec);
            }
            let (r, err) = self.mid.sqrt(prec);
            return Ball::new(r, err, prec);
        }
        if !self.is_positive() {
            if self.upper().is_negative() {
                return Ball::indeterminate(prec);
            }
            let (r, err) = self.upper().sqrt(prec);
            let hi = r.add(&Float::from_mag(err));
            return Ball::from_endpoints(&Float::zero(), &hi, prec);
        }
        let (r, err) = self.mid.sqrt(prec);
        // |sqrt(x) - sqrt(m)| <= rad / sqrt(m)
        let root_lo = r.mag_lower();
        Ball::new(r, err.add(self.rad.div(root_lo)), prec)
    }

    pub fn total_cmp_mid(&self, o: &Ball) -> Ordering {
        self.mid.cmp(&o.mid)
    }

    /// Radius relative to the midpoint, as `log2` (for precision heuristics).
    pub fn accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        if !self.is_finite() {
            return i64::MIN;
        }
        if self.mid.is_zero() {
            return -self.rad.log2_ceil();
        }
        self.mid.top() - self.rad.log2_ceil()
    }

    pub fn to_rational_mid(&self) -> BigRational {
        self.mid.to_rational()
    }
}

fn b_lo_upper(f: &Float) -> Mag {
    f.mag_upper()
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = super::decimal::render(self);
        write!(f, "{} +/- {}", d.mid, d.rad)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $m(self, o: &Ball) -> Ball {
                self.$f(o)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, o: Ball) -> Ball {
                self.$f(&o)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $m(self, o: &Ball) -> Ball {
                self.$f(o)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $m(self, o: Ball) -> Ball {
                self.$f(&o)
            }
        }
    };
}

forward_binop!(Add, add, add_ball);
forward_binop!(Sub, sub, sub_ball);
forward_binop!(Mul, mul, mul_ball);
forward_binop!(Div, div, div_ball);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        self.neg_ball()
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        self.neg_ball()
    }
}

/// Helper for tests and callers holding plain rationals.
pub fn rational_ball(num: i64, den: i64, prec: u32) -> Ball {
    Ball::from_rational(&BigRational::new(num.into(), den.into()), prec)
}

pub(crate) fn is_zero_ball(b: &Ball) -> bool {
    b.mid.is_zero() && b.rad.is_zero()
}

impl Ball {
    pub fn is_zero_exact(&self) -> bool {
        is_zero_ball(self)
    }

    pub fn sign_of_mid(&self) -> i32 {
        if self.mid.is_zero() {
            0
        } else if self.mid.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Interval-hull check that `|self - o| <= tol`.
    pub fn within(&self, o: &Ball, tol: f64) -> bool {
        let d = self.sub_ball(o).abs();
        d.is_finite() && d.lower().to_f64() <= tol
    }

    pub fn integer_part_abs_bits(&self) -> u64 {
        let m = self.mid.abs();
        if m.is_zero() {
            0
        } else {
            m.top().max(0) as u64
        }
    }

    pub fn is_rational_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_rational_abs(&self) -> BigRational {
        self.mid.to_rational().abs()
    }

    pub fn nonzero_mid(&self) -> bool {
        !self.mid.is_zero()
    }

    pub fn zero_like(&self) -> Ball {
        Ball::zero(self.prec)
    }

    pub fn mid_is_zero(&self) -> bool {
        self.mid.mantissa().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_times_three() {
        let third = rational_ball(1, 3, 64);
        let back = &third * &Ball::from_i64(3, 64);
        assert!(back.contains_bigint(&BigInt::from(1)));
        assert!(back.rad_f64() < 1e-17);
    }

    #[test]
    fn division_by_ball_containing_zero_is_unbounded() {
        let x = Ball::from_i64(1, 64);
        let z = Ball::new(Float::zero(), Mag::pow2(-10), 64);
        assert!(!(&x / &z).is_finite());
    }

    #[test]
    fn sqrt_encloses() {
        let two = Ball::from_i64(2, 100);
        let r = two.sqrt();
        assert!((r.sqr()).contains_bigint(&BigInt::from(2)));
        let fuzzy = Ball::new(Float::from_i64(2), Mag::pow2(-20), 100).sqrt();
        assert!(fuzzy.contains_float(&r.mid().clone()));
    }

    #[test]
    fn max_of_overlapping_balls() {
        let a = Ball::new(Float::from_i64(1), Mag::pow2(-1), 64);
        let b = Ball::new(Float::from_f64(1.25), Mag::pow2(-1), 64);
        let m = a.max_ball(&b);
        assert!(m.contains_float(&Float::from_f64(1.5)));
        assert!(m.contains_float(&Float::from_f64(0.75)));
    }

    #[test]
    fn unique_integer_detection() {
        let b = Ball::new(Float::from_f64(41.999), Mag::pow2(-4), 64);
        assert_eq!(b.unique_integer(), Some(BigInt::from(42)));
        let wide = Ball::new(Float::from_f64(41.5), Mag::pow2(0), 64);
        assert_eq!(wide.unique_integer(), None);
    }
}
