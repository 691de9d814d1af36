//! `alpha_k = ((2 - i)/(2 + i))^(1/k)` and `beta_k = alpha_k + conj(alpha_k)`.
//!
//! `alpha_k` has minimal polynomial `5x^2k - 6x^k + 5` and `beta_k` has
//! `5 D_k(x) - 6`, where `D_k(x + 1/x) = x^k + x^-k`. Both have degree
//! beyond the factorization cap for large `k`; irreducibility follows from
//! `(3 - 4i)/5` not being a `p`-th power in `Q(i)` for any prime `p`.

use num_bigint::BigInt;

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Argument of `(3 - 4i)/5`.
fn psi() -> f64 {
    (-4f64).atan2(3.0)
}

/// `D_0 = 2, D_1 = x, D_{n+1} = x D_n - D_{n-1}`.
pub fn dickson(k: usize) -> IntPolynomial {
    let mut a = IntPolynomial::constant(BigInt::from(2));
    let mut b = IntPolynomial::x();
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = IntPolynomial::x().mul(&b).sub(&a);
        a = b;
        b = c;
    }
    b
}

pub fn qtr_beta_minpoly(k: usize) -> IntPolynomial {
    dickson(k)
        .scale(&BigInt::from(5))
        .sub(&IntPolynomial::constant(BigInt::from(6)))
}

/// Picks the conjugate whose enclosure is nearest to `target`.
fn pick(all: Vec<AlgebraicNumber>, target: (f64, f64)) -> Result<AlgebraicNumber> {
    let dist = |x: &AlgebraicNumber| {
        let (re, im) = x.region().mid_f64();
        (re - target.0).hypot(im - target.1)
    };
    all.into_iter()
        .min_by(|a, b| dist(a).total_cmp(&dist(b)))
        .ok_or_else(|| Error::domain("empty conjugate set"))
}

/// The principal `k`-th root of `(3 - 4i)/5`.
pub fn qtr_alpha(k: usize) -> Result<AlgebraicNumber> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let mut cs = vec![BigInt::from(0); 2 * k + 1];
    cs[0] = 5.into();
    cs[k] = (-6).into();
    cs[2 * k] = 5.into();
    let f = IntPolynomial::new(cs);
    let hints: Vec<(f64, f64)> = (0..k)
        .flat_map(|j| {
            let tau = std::f64::consts::TAU * j as f64;
            [(psi() + tau) / k as f64, (-psi() + tau) / k as f64]
        })
        .map(|a| (a.cos(), a.sin()))
        .collect();
    let a = psi() / k as f64;
    pick(AlgebraicNumber::conjugate_set_unchecked(&f, Some(hints))?, (a.cos(), a.sin()))
}

/// `2 cos(psi/k)`, the trace of `alpha_k` down to the real subfield.
pub fn qtr_beta(k: usize) -> Result<AlgebraicNumber> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let f = qtr_beta_minpoly(k);
    let hints: Vec<(f64, f64)> = (0..k)
        .map(|j| (2.0 * ((psi() + std::f64::consts::TAU * j as f64) / k as f64).cos(), 0.0))
        .collect();
    pick(
        AlgebraicNumber::conjugate_set_unchecked(&f, Some(hints))?,
        (2.0 * (psi() / k as f64).cos(), 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::weil_height;

    #[test]
    fn small_cases_match_arithmetic() {
        let a1 = qtr_alpha(1).unwrap();
        let two_minus_i = AlgebraicNumber::i().neg().add_rational(&BigInt::from(2).into()).unwrap();
        let two_plus_i = AlgebraicNumber::i().add_rational(&BigInt::from(2).into()).unwrap();
        assert_eq!(a1, two_minus_i.div(&two_plus_i).unwrap());
        let b3 = qtr_beta(3).unwrap();
        let a3 = qtr_alpha(3).unwrap();
        assert_eq!(b3, a3.add(&a3.complex_conjugate()).unwrap());
        assert_eq!(dickson(3), IntPolynomial::from_i64s(&[0, -3, 0, 1]));
    }

    #[test]
    fn heights_along_the_chain() {
        for k in [1usize, 7, 20] {
            let h = weil_height(&qtr_alpha(k).unwrap(), 128).unwrap();
            assert!((h.mid_f64() - 5f64.ln() / (2 * k) as f64).abs() < 1e-15);
            assert!(h.rad_f64() < 1e-20);
        }
        let h = weil_height(&qtr_beta(60).unwrap(), 64).unwrap();
        assert!((h.mid_f64() - 0.3231).abs() < 0.08);
    }
}
