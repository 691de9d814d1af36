//! Upward-rounded magnitudes used as ball radii.

use std::cmp::Ordering;
use std::fmt;

const MAN_BITS: u32 = 32;
const INF_EXP: i64 = i64::MAX;

/// A non-negative real upper bound `man * 2^exp` with a 32-bit mantissa.
///
/// All arithmetic rounds away from zero so that a `Mag` computed from upper
/// bounds stays an upper bound. `Mag::INF` absorbs everything.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };
    pub const INF: Mag = Mag {
        man: 1,
        exp: INF_EXP,
    };

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    pub fn is_inf(self) -> bool {
        self.exp == INF_EXP
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    fn from_parts(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        let (mut m, mut e) = if bits > MAN_BITS {
            let s = bits - MAN_BITS;
            let mut m = man >> s;
            if up && (m << s) != man {
                m += 1;
            }
            (m as u64, exp.saturating_add(s as i64))
        } else {
            let s = MAN_BITS - bits;
            ((man << s) as u64, exp.saturating_sub(s as i64))
        };
        if m == 1u64 << MAN_BITS {
            m >>= 1;
            e = e.saturating_add(1);
        }
        if e >= INF_EXP / 2 {
            return Mag::INF;
        }
        Mag { man: m, exp: e }
    }

    pub(crate) fn from_parts_up(man: u128, exp: i64) -> Mag {
        Mag::from_parts(man, exp, true)
    }

    pub(crate) fn from_parts_down(man: u128, exp: i64) -> Mag {
        Mag::from_parts(man, exp, false)
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::from_parts_up(v as u128, 0)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Mag {
        Mag {
            man: 1u64 << (MAN_BITS - 1),
            exp: e - (MAN_BITS as i64 - 1),
        }
    }

    /// Upper bound for a finite, non-negative `f64`.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x >= 0.0, "negative magnitude");
        if x.is_infinite() || x.is_nan() {
            return Mag::INF;
        }
        if x == 0.0 {
            return Mag::ZERO;
        }
        let (man, exp) = decompose_f64(x);
        Mag::from_parts_up(man as u128, exp)
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_inf() || o.is_inf() {
            return Mag::INF;
        }
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (a, b) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let diff = a.exp - b.exp;
        if diff > 90 {
            return Mag::from_parts_up(a.man as u128 + 1, a.exp);
        }
        let sum = ((a.man as u128) << diff) + b.man as u128;
        Mag::from_parts_up(sum, b.exp)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        if self.is_inf() || o.is_inf() {
            return Mag::INF;
        }
        Mag::from_parts_up(self.man as u128 * o.man as u128, self.exp + o.exp)
    }

    /// Lower bound of the product of two lower bounds.
    pub fn mul_lower(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        if self.is_inf() || o.is_inf() {
            return Mag::INF;
        }
        Mag::from_parts_down(self.man as u128 * o.man as u128, self.exp + o.exp)
    }

    /// Upper bound of `self / lower` where `lower` is a lower bound of the divisor.
    pub fn div(self, lower: Mag) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        if lower.is_zero() || self.is_inf() {
            return Mag::INF;
        }
        if lower.is_inf() {
            return Mag::ZERO;
        }
        let q = ((self.man as u128) << 64) / lower.man as u128 + 1;
        Mag::from_parts_up(q, self.exp - lower.exp - 64)
    }

    /// Lower bound of `self - o` (saturating at zero) where `self` is a lower
    /// bound and `o` an upper bound.
    pub fn sub_lower(self, o: Mag) -> Mag {
        if o.is_inf() {
            return Mag::ZERO;
        }
        if self.is_inf() {
            return Mag::INF;
        }
        if o.is_zero() {
            return self;
        }
        if self.cmp(&o) != Ordering::Greater {
            return Mag::ZERO;
        }
        let diff = self.exp - o.exp;
        if diff > 90 {
            return Mag::from_parts_down(self.man as u128 - 1, self.exp);
        }
        if diff >= 0 {
            let a = (self.man as u128) << diff;
            Mag::from_parts_down(a - o.man as u128, o.exp)
        } else {
            // self > o but with smaller exponent: mantissa alignment the other way
            let b = (o.man as u128) << (-diff);
            let a = self.man as u128;
            if a <= b {
                return Mag::ZERO;
            }
            Mag::from_parts_down(a - b, self.exp)
        }
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() || self.is_inf() {
            return self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    pub fn max(self, o: Mag) -> Mag {
        if self >= o {
            self
        } else {
            o
        }
    }

    /// Smallest `e` with `self <= 2^e` (for nonzero finite values).
    pub fn log2_ceil(self) -> i64 {
        if self.is_inf() {
            return i64::MAX;
        }
        if self.is_zero() {
            return i64::MIN;
        }
        let bits = 64 - self.man.leading_zeros() as i64;
        if self.man.is_power_of_two() {
            self.exp + bits - 1
        } else {
            self.exp + bits
        }
    }

    /// Nearest `f64` (may over/underflow); for display and heuristics only.
    pub fn to_f64(self) -> f64 {
        if self.is_inf() {
            return f64::INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    pub(crate) fn parts(self) -> (u64, i64) {
        (self.man, self.exp)
    }
}

pub(crate) fn decompose_f64(x: f64) -> (u64, i64) {
    let bits = x.abs().to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_inf(), other.is_inf()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // normalized mantissas share a bit length, so exponents decide first
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "Mag(inf)")
        } else {
            write!(f, "Mag({:e})", self.to_f64())
        }
    }
}
