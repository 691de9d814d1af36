//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Ball, ComplexBall};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    /// `x`.
    pub fn x() -> IntPolynomial {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPolynomial {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPolynomial::new(v)
    }

    /// `a x - b`, the minimal polynomial of `b/a` when primitive.
    pub fn linear_root(q: &BigRational) -> IntPolynomial {
        IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero mapped to 0, for loops over nonzero inputs.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.lc().is_positive()
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        IntPolynomial::new(v)
    }

    pub fn sub(&self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        IntPolynomial::new(v)
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(v)
    }

    /// `x^deg f(1/x)`.
    pub fn reverse(&self) -> IntPolynomial {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPolynomial::new(v)
    }

    /// `f(-x)`.
    pub fn negate_var(&self) -> IntPolynomial {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial::new(v)
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPolynomial::new(v)
    }

    /// `f(x + c)` by Horner-style Taylor shift.
    pub fn shift(&self, c: &BigInt) -> IntPolynomial {
        let mut v = self.coeffs.clone();
        let n = v.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &v[j + 1] * c;
                v[j] += t;
            }
        }
        IntPolynomial::new(v)
    }

    /// `den^deg f(x * num / den)`, i.e. the substitution `x -> (num/den) x`
    /// with denominators cleared.
    pub fn scale_var(&self, num: &BigInt, den: &BigInt) -> IntPolynomial {
        let d = self.deg();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num.pow(i as u32) * den.pow((d - i) as u32))
            .collect();
        IntPolynomial::new(v)
    }

    /// `den^deg f(x + num/den)`, with denominators cleared.
    pub fn shift_rational(&self, q: &BigRational) -> IntPolynomial {
        // f(x + n/d) * d^deg = g(d x + n) with g(y) = d^deg f(y/d)
        let d = q.denom();
        let g = self.scale_var(&BigInt::one(), d);
        g.shift(q.numer()).scale_var(d, &BigInt::one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_ball(&self, x: &Ball) -> Ball {
        let prec = x.prec();
        let mut acc = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ball(x).add_ball(&Ball::from_bigint(c, prec));
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexBall) -> ComplexBall {
        let prec = z.prec();
        let mut acc = ComplexBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&ComplexBall::real(Ball::from_bigint(c, prec)));
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// Exact quotient when `o` divides `self` over the integers.
    pub fn div_exact(&self, o: &IntPolynomial) -> Option<IntPolynomial> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.deg() < o.deg() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let lc = o.lc();
        let dq = self.deg() - o.deg();
        let mut q = vec![BigInt::zero(); dq + 1];
        for i in (0..=dq).rev() {
            let top = &r[i + o.deg()];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, c) in o.coeffs.iter().enumerate() {
                r[i + j] -= &qi * c;
            }
            q[i] = qi;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(o)^(deg self - deg o + 1) self mod o`.
    pub fn pseudo_rem(&self, o: &IntPolynomial) -> IntPolynomial {
        assert!(!o.is_zero(), "pseudo-remainder by zero");
        if self.deg() < o.deg() || self.is_zero() {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        let lc = o.lc();
        let db = o.deg();
        let mut dr = r.len() - 1;
        let mut steps = self.deg() - db + 1;
        loop {
            let top = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, c) in o.coeffs.iter().enumerate() {
                r[dr - db + j] -= &top * c;
            }
            steps -= 1;
            r.truncate(dr);
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.is_empty() || r.len() - 1 < db {
                break;
            }
            dr = r.len() - 1;
        }
        let scale = lc.pow(steps as u32);
        IntPolynomial::new(r).scale(&scale)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= o.deg() {
            (self.primitive_part(), o.primitive_part())
        } else {
            (o.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a
    }

    /// Squarefree decomposition `f = c * prod g_i^i` (Yun); returns `(g_i, i)`
    /// for the nonconstant `g_i`, each primitive.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return vec![];
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> IntPolynomial {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return f;
        }
        let g = f.gcd(&f.derivative());
        f.div_exact(&g).unwrap().primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn l2_norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Rational roots, by testing divisors of the end coefficients.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut f = self.primitive_part();
        if f.is_zero() {
            return out;
        }
        if f.coeff(0).is_zero() {
            out.push(BigRational::zero());
            while f.coeff(0).is_zero() {
                f = IntPolynomial::new(f.coeffs[1..].to_vec());
            }
        }
        if f.deg() == 0 {
            return out;
        }
        let ps = small_divisors(&f.coeff(0));
        let qs = small_divisors(&f.lc());
        let (Some(ps), Some(qs)) = (ps, qs) else {
            return out;
        };
        for p in &ps {
            for q in &qs {
                for s in [p.clone(), -p.clone()] {
                    let r = BigRational::new(s, q.clone());
                    if !out.contains(&r) && f.eval_rational(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_string_vec(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_string_vec(v: &[String]) -> Result<IntPolynomial> {
        let cs = v
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::parse(format!("bad integer coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(cs))
    }
}

/// All positive divisors, if the number is small enough to factor by trial.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.bits() > 40 {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Resultant of two integer polynomials via a fraction-free determinant of the
/// Sylvester matrix.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (a.deg(), b.deg());
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return a.lc().pow(n as u32);
    }
    if n == 0 {
        return b.lc().pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        let strs: Vec<String> = v
            .into_iter()
            .map(|x| match x {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(serde::de::Error::custom(format!(
                    "coefficient must be an integer string, got {other}"
                ))),
            })
            .collect::<std::result::Result<_, _>>()?;
        IntPolynomial::from_string_vec(&strs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
    }

    #[test]
    fn squarefree_decomposition_of_powers() {
        // (x-1)^2 (x+2)^3 x
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).mul(&p(&[0, 1]));
        let sqf = f.squarefree_decomposition();
        assert_eq!(sqf, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn resultant_examples() {
        // Res(x^2 - 2, x^2 - 3) = (sqrt2^2-3)^2 ... = 1
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), BigInt::from(1));
        // Res(x - a, g) = g(a)
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[1, 1, 1])), BigInt::from(13));
    }

    #[test]
    fn shifts_and_scales() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.shift(&BigInt::from(1)), p(&[-1, 2, 1]));
        let q = BigRational::new(1.into(), 2.into());
        // 4 * ((x + 1/2)^2 - 2) = 4x^2 + 4x - 7
        assert_eq!(f.shift_rational(&q), p(&[-7, 4, 4]));
        assert_eq!(p(&[1, 1]).inflate(3), p(&[1, 0, 0, 1]));
    }

    #[test]
    fn rational_roots_found() {
        let f = p(&[-1, 0, 1]).mul(&p(&[1, 2]));
        let r = f.rational_roots();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn serde_roundtrip() {
        let f = p(&[5, -6, 5]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["5","-6","5"]"#);
        let g: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
