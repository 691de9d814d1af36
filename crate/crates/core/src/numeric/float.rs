//! Exact dyadic numbers `man * 2^exp` with explicit rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::{decompose_f64, Mag};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl Float {
    pub fn zero() -> Float {
        Float {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Float {
        Float::from_i64(1)
    }

    /// Builds `man * 2^exp`, stripping trailing zero bits.
    pub fn from_parts(man: BigInt, exp: i64) -> Float {
        if man.is_zero() {
            return Float::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Float {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Float { man, exp }
        }
    }

    pub fn from_i64(v: i64) -> Float {
        Float::from_parts(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Float {
        Float::from_parts(v.clone(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Float::zero();
        }
        let (m, e) = decompose_f64(x);
        let man = if x < 0.0 {
            -BigInt::from(m)
        } else {
            BigInt::from(m)
        };
        Float::from_parts(man, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn neg(&self) -> Float {
        Float {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Float {
        Float {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `|self| < 2^top()`; meaningless for zero.
    pub fn top(&self) -> i64 {
        self.exp + self.man.bits() as i64
    }

    pub fn mul_2exp(&self, e: i64) -> Float {
        if self.is_zero() {
            return Float::zero();
        }
        Float {
            man: self.man.clone(),
            exp: self.exp + e,
        }
    }

    /// Upper bound on `|self|`.
    pub fn mag_upper(&self) -> Mag {
        self.mag(true)
    }

    /// Lower bound on `|self|`.
    pub fn mag_lower(&self) -> Mag {
        self.mag(false)
    }

    fn mag(&self, up: bool) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let bits = self.man.bits();
        let abs = self.man.magnitude();
        if bits <= 64 {
            let m = abs.to_u64().unwrap();
            return if up {
                Mag::from_parts_up(m as u128, self.exp)
            } else {
                Mag::from_parts_down(m as u128, self.exp)
            };
        }
        let shift = bits - 64;
        let top = (abs >> shift).to_u64().unwrap();
        if up {
            // +1 covers any discarded low bits
            Mag::from_parts_up(top as u128 + 1, self.exp + shift as i64)
        } else {
            Mag::from_parts_down(top as u128, self.exp + shift as i64)
        }
    }

    pub fn from_mag(m: Mag) -> Float {
        let (man, exp) = m.parts();
        assert!(!m.is_inf(), "infinite magnitude");
        Float::from_parts(BigInt::from(man), exp)
    }

    pub fn add(&self, o: &Float) -> Float {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &o.man << (o.exp - e) as u64;
        Float::from_parts(a + b, e)
    }

    pub fn sub(&self, o: &Float) -> Float {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Float) -> Float {
        if self.is_zero() || o.is_zero() {
            return Float::zero();
        }
        Float::from_parts(&self.man * &o.man, self.exp + o.exp)
    }

    /// Rounds toward negative infinity to `prec` bits, returning the bound on
    /// the discarded part.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec as u64;
        let man = &self.man >> shift;
        let exp = self.exp + shift as i64;
        (Float::from_parts(man, exp), Mag::pow2(exp))
    }

    /// Sum rounded to `prec` bits; a summand far below the rounding level of
    /// the other goes into the error term instead of being aligned.
    pub fn add_round(&self, o: &Float, prec: u32) -> (Float, Mag) {
        if self.is_zero() {
            return o.round(prec);
        }
        if o.is_zero() {
            return self.round(prec);
        }
        let (big, small) = if self.top() >= o.top() {
            (self, o)
        } else {
            (o, self)
        };
        if big.top() - small.top() > prec as i64 + 8 {
            let (r, err) = big.round(prec);
            return (r, err.add(small.mag_upper()));
        }
        big.add(small).round(prec)
    }

    /// Truncated quotient with at least `prec` significant bits.
    pub fn div(&self, o: &Float, prec: u32) -> (Float, Mag) {
        assert!(!o.is_zero(), "Float division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let want = prec as i64 + 2 + o.bits() as i64 - self.bits() as i64;
        let shift = want.max(0);
        let num = &self.man << shift as u64;
        let q = &num / &o.man;
        let exp = self.exp - shift - o.exp;
        let (r, err) = Float::from_parts(q, exp).round(prec);
        (r, err.add(Mag::pow2(exp)))
    }

    /// Floor square root of a non-negative value.
    pub fn sqrt(&self, prec: u32) -> (Float, Mag) {
        assert!(!self.is_negative(), "sqrt of negative Float");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let want = 2 * prec as i64 + 4 - self.bits() as i64;
        let mut shift = want.max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let man = &self.man << shift as u64;
        let exp = self.exp - shift;
        let root = man.sqrt();
        let half = exp / 2;
        let (r, err) = Float::from_parts(root, half).round(prec);
        (r, err.add(Mag::pow2(half)))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            ((&self.man >> s).to_f64().unwrap(), self.exp + s as i64)
        } else {
            (self.man.to_f64().unwrap(), self.exp)
        };
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling so intermediate powers stay finite
        let e1 = (e / 2) as i32;
        let e2 = (e - e / 2) as i32;
        m * 2f64.powi(e1) * 2f64.powi(e2)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Rational to `prec` bits, with error bound.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Float, Mag) {
        let n = Float::from_bigint(q.numer());
        let d = Float::from_bigint(q.denom());
        if q.denom().is_one() {
            return n.round(prec);
        }
        n.div(&d, prec)
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            // arithmetic shift rounds toward negative infinity
            &self.man >> (-self.exp) as u64
        }
    }

    /// Nearest integer (ties up).
    pub fn round_to_integer(&self) -> BigInt {
        self.add(&Float::from_parts(BigInt::one(), -1)).floor()
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    pub fn min(&self, o: &Float) -> Float {
        if self <= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn max(&self, o: &Float) -> Float {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    /// Exact midpoint of two values.
    pub fn midpoint(&self, o: &Float) -> Float {
        self.add(o).mul_2exp(-1)
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.man.sign();
        let sb = other.man.sign();
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes by top bit first
        let ta = self.top();
        let tb = other.top();
        let mag_order = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.man.magnitude() << (self.exp - e) as u64;
            let b = other.man.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float({:e})", self.to_f64())
    }
}

impl From<i64> for Float {
    fn from(v: i64) -> Float {
        Float::from_i64(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ops() {
        let a = Float::from_f64(1.5);
        let b = Float::from_f64(-0.25);
        assert_eq!(a.add(&b).to_f64(), 1.25);
        assert_eq!(a.mul(&b).to_f64(), -0.375);
        assert!(b < a);
        assert!(Float::from_f64(-3.0) < b);
    }

    #[test]
    fn division_error_bound_holds() {
        let one = Float::one();
        let three = Float::from_i64(3);
        let (q, err) = one.div(&three, 60);
        let exact = BigRational::new(1.into(), 3.into());
        let diff = (q.to_rational() - exact).abs();
        assert!(diff <= Float::from_mag(err).to_rational());
    }

    #[test]
    fn sqrt_of_two() {
        let (r, err) = Float::from_i64(2).sqrt(80);
        let lo = r.to_rational();
        let hi = &lo + Float::from_mag(err).to_rational();
        let two = BigRational::from_integer(2.into());
        assert!(&lo * &lo <= two);
        assert!(&hi * &hi >= two);
    }

    #[test]
    fn rounding_floor_and_nearest() {
        assert_eq!(Float::from_f64(-2.5).floor(), BigInt::from(-3));
        assert_eq!(Float::from_f64(2.5).round_to_integer(), BigInt::from(3));
        assert_eq!(Float::from_f64(2.4).round_to_integer(), BigInt::from(2));
    }
}
