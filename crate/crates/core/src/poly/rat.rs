//! Dense univariate polynomials over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> RatPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> RatPolynomial {
        RatPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> RatPolynomial {
        RatPolynomial::new(vec![c])
    }

    pub fn one() -> RatPolynomial {
        RatPolynomial::constant(BigRational::one())
    }

    pub fn x() -> RatPolynomial {
        RatPolynomial::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_int(f: &IntPolynomial) -> RatPolynomial {
        RatPolynomial::new(
            f.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || o.is_zero() {
            return RatPolynomial::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPolynomial::new(v)
    }

    pub fn div_rem(&self, o: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        assert!(!o.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < o.coeffs.len() {
            return (RatPolynomial::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let db = o.deg();
        let inv = o.lc().recip();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] * &inv;
            if !c.is_zero() {
                for (j, b) in o.coeffs.iter().enumerate() {
                    r[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (RatPolynomial::new(q), RatPolynomial::new(r))
    }

    pub fn rem(&self, o: &RatPolynomial) -> RatPolynomial {
        self.div_rem(o).1
    }

    pub fn monic(&self) -> RatPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// `(g, s, t)` with `s self + t o = g`, `g` monic.
    pub fn xgcd(&self, o: &RatPolynomial) -> (RatPolynomial, RatPolynomial, RatPolynomial) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (RatPolynomial::one(), RatPolynomial::zero());
        let (mut t0, mut t1) = (RatPolynomial::zero(), RatPolynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn gcd(&self, o: &RatPolynomial) -> RatPolynomial {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &RatPolynomial) -> RatPolynomial {
        let mut acc = RatPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&RatPolynomial::constant(c.clone()));
        }
        acc
    }

    /// Primitive integer polynomial with the same roots (positive leading
    /// coefficient), and the rational factor removed.
    pub fn to_primitive_int(&self) -> (IntPolynomial, BigRational) {
        if self.is_zero() {
            return (IntPolynomial::zero(), BigRational::one());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let f = IntPolynomial::new(ints);
        let pp = f.primitive_part();
        let factor = BigRational::new(f.lc(), pp.lc() * den);
        (pp, factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn xgcd_inverse_mod_minpoly() {
        // inverse of (x + 1) modulo x^2 - 2 is x - 1
        let m = RatPolynomial::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        let a = RatPolynomial::new(vec![q(1, 1), q(1, 1)]);
        let (g, s, _) = a.xgcd(&m);
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(s, RatPolynomial::new(vec![q(-1, 1), q(1, 1)]));
    }

    #[test]
    fn primitive_conversion() {
        let f = RatPolynomial::new(vec![q(1, 2), q(-1, 3)]);
        let (g, c) = f.to_primitive_int();
        assert_eq!(g, IntPolynomial::from_i64s(&[-3, 2]));
        assert_eq!(c, q(-1, 6));
    }
}
