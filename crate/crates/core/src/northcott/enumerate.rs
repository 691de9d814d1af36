//! All algebraic numbers of bounded degree and height.

use std::collections::VecDeque;

use num_traits::{One, ToPrimitive};

use super::{binom, compare_height, CapTest, HeightCap};
use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::numeric::elementary;
use crate::poly::{is_irreducible, IntPolynomial};

pub const MAX_ENUM_DEGREE: u32 = 6;
const MAX_ENUM_HEIGHT: f64 = 5.0;
const MAX_CANDIDATES: f64 = 5e7;

/// Lazy stream of every algebraic number of degree `<= d` and height
/// `<= cap`, each exactly once: by degree, then by minimal polynomial in
/// odometer order of its coefficients, then by root index.
pub struct BoundedEnumeration {
    d: u32,
    cap: HeightCap,
    k: u32,
    bounds: Vec<i64>,
    cur: Option<Vec<i64>>,
    pending: VecDeque<AlgebraicNumber>,
    pub boundary_cases: usize,
}

/// Coefficients of a primitive integer polynomial whose roots all have
/// height `<= B` lie in `|a_j| <= binom(k, j) exp(k B)`.
pub fn enumerate_bounded(d: u32, cap: &HeightCap) -> Result<BoundedEnumeration> {
    if d == 0 || d > MAX_ENUM_DEGREE {
        return Err(Error::domain(format!("degree must be in 1..={MAX_ENUM_DEGREE}")));
    }
    if cap.is_negative() {
        return Err(Error::domain("height cap must be non-negative"));
    }
    if cap.to_f64() > MAX_ENUM_HEIGHT {
        return Err(Error::domain(format!("height cap must be <= {MAX_ENUM_HEIGHT}")));
    }
    let mut total = 0.0;
    for k in 1..=d {
        total += coefficient_bounds(k, cap)
            .iter()
            .enumerate()
            .map(|(j, &b)| if j == k as usize { b as f64 } else { 2.0 * b as f64 + 1.0 })
            .product::<f64>();
    }
    if total > MAX_CANDIDATES {
        return Err(Error::domain(format!(
            "about {total:.2e} candidate polynomials exceeds the cap {MAX_CANDIDATES:.0e}"
        )));
    }
    let mut e = BoundedEnumeration {
        d,
        cap: cap.clone(),
        k: 0,
        bounds: vec![],
        cur: None,
        pending: VecDeque::new(),
        boundary_cases: 0,
    };
    e.next_degree();
    Ok(e)
}

fn coefficient_bounds(k: u32, cap: &HeightCap) -> Vec<i64> {
    let prec = 64;
    let m = elementary::exp(&cap.to_ball(prec).mul_i64(k as i64));
    (0..=k)
        .map(|j| {
            let b = m.mul_ball(&crate::numeric::Ball::from_bigint(&binom(k, j), prec));
            b.upper().floor().to_i64().unwrap_or(i64::MAX)
        })
        .collect()
}

impl BoundedEnumeration {
    fn next_degree(&mut self) {
        self.k += 1;
        if self.k > self.d {
            self.cur = None;
            return;
        }
        self.bounds = coefficient_bounds(self.k, &self.cap);
        let mut start: Vec<i64> = self.bounds[..self.k as usize].iter().map(|b| -b).collect();
        start.push(1);
        self.cur = Some(start);
    }

    fn advance(&mut self) {
        let Some(cur) = self.cur.as_mut() else { return };
        for (j, c) in cur.iter_mut().enumerate() {
            let hi = self.bounds[j];
            if *c < hi {
                *c += 1;
                return;
            }
            *c = if j + 1 == self.bounds.len() { 1 } else { -hi };
        }
        self.next_degree();
    }

    fn accept(&mut self, cs: &[i64]) -> Result<()> {
        let k = cs.len() - 1;
        if k > 1 && cs[0] == 0 {
            return Ok(());
        }
        let f = IntPolynomial::from_i64s(cs);
        if !f.content().is_one() {
            return Ok(());
        }
        if k > 1 && !is_irreducible(&f)? {
            return Ok(());
        }
        let roots = AlgebraicNumber::roots_of(&f)?;
        match compare_height(&roots[0], &self.cap)? {
            CapTest::Above => return Ok(()),
            CapTest::Boundary => self.boundary_cases += 1,
            CapTest::Below => {}
        }
        self.pending.extend(roots);
        Ok(())
    }
}

impl Iterator for BoundedEnumeration {
    type Item = Result<AlgebraicNumber>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(x) = self.pending.pop_front() {
                return Some(Ok(x));
            }
            let cs = self.cur.clone()?;
            self.advance();
            if let Err(e) = self.accept(&cs) {
                return Some(Err(e));
            }
        }
    }
}

/// Rationals of height `<= cap`, sorted: `p/q` with `max(|p|, q) <= e^cap`.
pub(crate) fn bounded_rationals(cap: &HeightCap) -> Result<Vec<num_rational::BigRational>> {
    let mut out: Vec<num_rational::BigRational> = enumerate_bounded(1, cap)?
        .map(|x| x.map(|a| a.to_rational().expect("degree one")))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn collect(d: u32, cap: &HeightCap) -> Vec<AlgebraicNumber> {
        enumerate_bounded(d, cap).unwrap().collect::<Result<Vec<_>>>().unwrap()
    }

    #[test]
    fn rationals_up_to_log_two() {
        let got = bounded_rationals(&HeightCap::log(2)).unwrap();
        let want: Vec<BigRational> = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
            .iter()
            .map(|&(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        assert_eq!(got, want);
        let zero_height = collect(1, &HeightCap::Value(BigRational::zero()));
        assert_eq!(zero_height.len(), 3);
    }

    #[test]
    fn quadratic_roots_of_unity() {
        let cap: HeightCap = "0.4".parse().unwrap();
        let all = collect(2, &cap);
        for cyc in [[1, 0, 1], [1, 1, 1], [1, -1, 1]] {
            let f = IntPolynomial::from_i64s(&cyc);
            assert_eq!(all.iter().filter(|x| x.minpoly() == &f).count(), 2);
        }
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        // (1 + sqrt 5)/2 has height 0.2406
        assert!(all.iter().any(|x| x.minpoly() == &IntPolynomial::from_i64s(&[-1, -1, 1])));
    }

    #[test]
    fn caps_enforced() {
        assert!(enumerate_bounded(7, &HeightCap::log(2)).is_err());
        assert!(enumerate_bounded(6, &"4.9".parse().unwrap()).is_err());
    }
}
