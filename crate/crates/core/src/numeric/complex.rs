//! Rectangular complex balls.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ball::Ball;
use super::elementary;
use super::float::Float;
use super::mag::Mag;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> ComplexBall {
        ComplexBall { re, im }
    }

    pub fn real(re: Ball) -> ComplexBall {
        let p = re.prec();
        ComplexBall::new(re, Ball::zero(p))
    }

    pub fn zero(prec: u32) -> ComplexBall {
        ComplexBall::real(Ball::zero(prec))
    }

    pub fn one(prec: u32) -> ComplexBall {
        ComplexBall::real(Ball::one(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> ComplexBall {
        ComplexBall::new(Ball::from_f64(re, prec), Ball::from_f64(im, prec))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> ComplexBall {
        ComplexBall::real(Ball::from_rational(q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.add_ball(&o.re), self.im.add_ball(&o.im))
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.sub_ball(&o.re), self.im.sub_ball(&o.im))
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall::new(self.re.neg_ball(), self.im.neg_ball())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.neg_ball())
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        let re = self.re.mul_ball(&o.re).sub_ball(&self.im.mul_ball(&o.im));
        let im = self.re.mul_ball(&o.im).add_ball(&self.im.mul_ball(&o.re));
        ComplexBall::new(re, im)
    }

    pub fn mul_real(&self, r: &Ball) -> ComplexBall {
        ComplexBall::new(self.re.mul_ball(r), self.im.mul_ball(r))
    }

    pub fn mul_2exp(&self, e: i64) -> ComplexBall {
        ComplexBall::new(self.re.mul_2exp(e), self.im.mul_2exp(e))
    }

    pub fn sqr(&self) -> ComplexBall {
        let re = self.re.sqr().sub_ball(&self.im.sqr());
        let im = self.re.mul_ball(&self.im).mul_2exp(1);
        ComplexBall::new(re, im)
    }

    /// `|z|^2`.
    pub fn abs_sqr(&self) -> Ball {
        self.re.sqr().add_ball(&self.im.sqr())
    }

    pub fn abs(&self) -> Ball {
        if self.im.is_zero_exact() {
            return self.re.abs();
        }
        self.abs_sqr().sqrt()
    }

    pub fn inv(&self) -> ComplexBall {
        let d = self.abs_sqr();
        ComplexBall::new(self.re.div_ball(&d), self.im.neg_ball().div_ball(&d))
    }

    pub fn div(&self, o: &ComplexBall) -> ComplexBall {
        if o.im.is_zero_exact() {
            return ComplexBall::new(self.re.div_ball(&o.re), self.im.div_ball(&o.re));
        }
        let d = o.abs_sqr();
        let n = self.mul(&o.conj());
        ComplexBall::new(n.re.div_ball(&d), n.im.div_ball(&d))
    }

    pub fn pow_u64(&self, mut e: u64) -> ComplexBall {
        let mut base = self.clone();
        let mut acc = ComplexBall::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn exp(&self) -> ComplexBall {
        let r = elementary::exp(&self.re);
        let (s, c) = elementary::sin_cos(&self.im);
        ComplexBall::new(r.mul_ball(&c), r.mul_ball(&s))
    }

    /// Upper bound on `|z|`.
    pub fn mag_upper(&self) -> Mag {
        let a = self.re.mag_upper();
        let b = self.im.mag_upper();
        a.mul(a).add(b.mul(b)).sqrt_upper()
    }

    /// Lower bound on `|z|`.
    pub fn mag_lower(&self) -> Mag {
        let a = self.re.mag_lower();
        let b = self.im.mag_lower();
        a.mul_lower(a).add_lower(b.mul_lower(b)).sqrt_lower()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    /// Midpoint as a pair of `f64`.
    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn mid(&self) -> ComplexBall {
        ComplexBall::new(self.re.mid_ball(), self.im.mid_ball())
    }

    pub fn set_prec(self, prec: u32) -> ComplexBall {
        ComplexBall::new(self.re.set_prec(prec), self.im.set_prec(prec))
    }

    /// Widens both parts by `r`.
    pub fn with_radius(self, r: Mag) -> ComplexBall {
        ComplexBall::new(self.re.with_radius(r), self.im.with_radius(r))
    }

    pub fn from_floats(re: Float, im: Float, prec: u32) -> ComplexBall {
        ComplexBall::new(Ball::exact(re, prec), Ball::exact(im, prec))
    }
}

impl Mag {
    /// Upper bound of the square root.
    pub fn sqrt_upper(self) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        let (man, exp) = self.parts();
        // make the exponent even, with a wide mantissa for accuracy
        let (m, e) = if exp.rem_euclid(2) == 0 {
            ((man as u128) << 64, exp - 64)
        } else {
            ((man as u128) << 63, exp - 63)
        };
        let r = isqrt_u128(m);
        let r = if r * r == m { r } else { r + 1 };
        Mag::from_parts_up(r, e / 2)
    }

    /// Lower bound of the square root.
    pub fn sqrt_lower(self) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        let (man, exp) = self.parts();
        let (m, e) = if exp.rem_euclid(2) == 0 {
            ((man as u128) << 64, exp - 64)
        } else {
            ((man as u128) << 63, exp - 63)
        };
        Mag::from_parts_down(isqrt_u128(m), e / 2)
    }

    /// Lower bound of a sum of lower bounds.
    pub fn add_lower(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        if self.is_inf() || o.is_inf() {
            return Mag::INF;
        }
        let (a, b) = if self >= o { (self, o) } else { (o, self) };
        let (am, ae) = a.parts();
        let (bm, be) = b.parts();
        let diff = ae - be;
        if diff > 90 {
            return a;
        }
        Mag::from_parts_down(((am as u128) << diff) + bm as u128, be)
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_modulus() {
        let z = ComplexBall::new(
            Ball::from_rational(&BigRational::new(3.into(), 5.into()), 128),
            Ball::from_rational(&BigRational::new((-4).into(), 5.into()), 128),
        );
        let a = z.abs();
        assert!(a.contains_float(&Float::one()));
        assert!(a.rad_f64() < 1e-30);
    }

    #[test]
    fn mag_sqrt_bounds() {
        let m = Mag::from_u64(2);
        assert!(m.sqrt_upper().to_f64() >= 2f64.sqrt());
        assert!(m.sqrt_lower().to_f64() <= 2f64.sqrt());
        assert_eq!(Mag::from_u64(16).sqrt_upper().to_f64(), 4.0);
    }

    #[test]
    fn exp_of_i_pi() {
        let pi = elementary::pi(128);
        let z = ComplexBall::new(Ball::zero(128), pi).exp();
        assert!(z.re.contains_float(&Float::from_i64(-1)));
        assert!(z.im.contains_float(&Float::zero()));
    }
}
