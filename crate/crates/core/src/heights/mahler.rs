//! Mahler measures in one and two variables, and `L(2, chi_3)`.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball, ComplexBall, Mag};
use crate::poly::{isolate_roots, IntPolynomial, MultiPoly};

/// `log M(f)` from the leading coefficient and boxes around all roots
/// (with multiplicity).
pub fn log_mahler_from_roots(lc: &num_bigint::BigInt, roots: &[ComplexBall], prec: u32) -> Ball {
    let one = Ball::one(prec);
    let mut acc = elementary::ln_bigint(&lc.abs(), prec);
    for z in roots {
        let r = z.abs().set_prec(prec);
        if r.certainly_le(&one) {
            continue;
        }
        let m = r.max_ball(&one);
        acc = acc.add_ball(&elementary::ln(&m));
    }
    acc
}

/// `log M(f)` for a nonzero integer polynomial.
pub fn log_mahler_measure(f: &IntPolynomial, prec: u32) -> Result<Ball> {
    if f.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let bits = prec + 8 + (f.deg() as u32).max(1).ilog2();
    let mut acc = elementary::ln_bigint(&f.content(), prec);
    for (g, e) in f.primitive_part().squarefree_decomposition() {
        if g.deg() == 0 {
            continue;
        }
        let roots = isolate_roots(&g, bits)?;
        let m = log_mahler_from_roots(&g.lc(), &roots, prec);
        acc = acc.add_ball(&m.mul_i64(e as i64));
    }
    Ok(acc)
}

/// `M(f) = |lc| prod max(1, |root|)`.
pub fn mahler_measure(f: &IntPolynomial, prec: u32) -> Result<Ball> {
    Ok(elementary::exp(&log_mahler_measure(f, prec + 4)?).set_prec(prec))
}

/// Numerical estimate with an empirical error radius.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub value: Ball,
    /// Always `false`: the radius comes from quadrature error estimates, not
    /// a proof.
    pub rigorous: bool,
    pub method: String,
    pub subintervals: usize,
}

/// `m(f) = int int log|f(e(s), e(t))| ds dt` for `f` in two variables, by
/// Jensen's formula in the second variable and adaptive Gauss-Kronrod
/// quadrature in the first.
pub fn mahler_measure_2var(f: &MultiPoly) -> Result<QuadratureEstimate> {
    if f.nvars() != 2 {
        return Err(Error::domain("two-variable Mahler measure needs a polynomial in 2 variables"));
    }
    if f.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let dy = f.partial_degrees()[1] as usize;
    // coefficients of y^j as polynomials in x
    let mut cols: Vec<Vec<(u32, f64)>> = vec![Vec::new(); dy + 1];
    for (e, c) in f.terms() {
        cols[e[1] as usize].push((e[0], crate::poly::int::bigint_to_f64(c)));
    }
    let phi = |s: f64| -> f64 {
        let x = Complex64::from_polar(1.0, std::f64::consts::TAU * s);
        let cs: Vec<Complex64> = cols
            .iter()
            .map(|col| col.iter().map(|&(k, c)| c * x.powu(k)).sum())
            .collect();
        jensen(&cs)
    };
    let (value, err, pieces) = adaptive_gk(&phi, 0.0, 1.0, 1e-13);
    let rad = Mag::from_f64_up(10.0 * err + 1e-14);
    Ok(QuadratureEstimate {
        value: Ball::new(crate::numeric::Float::from_f64(value), rad, 64),
        rigorous: false,
        method: "jensen+adaptive-gauss-kronrod".into(),
        subintervals: pieces,
    })
}

/// `log|c_top| + sum log+ |root|` of a complex polynomial in `y`.
fn jensen(cs: &[Complex64]) -> f64 {
    let mut cs = cs.to_vec();
    while cs.len() > 1 && cs.last().unwrap().norm() == 0.0 {
        cs.pop();
    }
    let lead = cs.last().copied().unwrap_or_default();
    if lead.norm() == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut acc = lead.norm().ln();
    for r in complex_roots(&cs) {
        let a = r.norm();
        if a > 1.0 {
            acc += a.ln();
        }
    }
    acc
}

/// Roots of a complex polynomial by Aberth iteration (f64).
fn complex_roots(cs: &[Complex64]) -> Vec<Complex64> {
    let n = cs.len() - 1;
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![-cs[0] / cs[1]];
    }
    let lead = cs[n];
    let a: Vec<Complex64> = cs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.7, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (mut p, mut d) = (Complex64::zero(), Complex64::zero());
            for c in a.iter().rev() {
                d = d * z[i] + p;
                p = p * z[i] + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

const GK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GK_WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for i in 0..7 {
        let x = h * GK_X[i];
        let s = f(c - x) + f(c + x);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive bisection until each piece's Kronrod-Gauss gap is below its
/// share of `tol`. Returns `(value, summed error estimate, pieces)`.
fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let mut stack = vec![(a, b, 0u32)];
    let (mut total, mut err, mut pieces) = (0.0, 0.0, 0);
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(f, lo, hi);
        let share = tol * (hi - lo) / (b - a);
        if e <= share.max(1e-17) || depth >= 40 {
            total += v;
            err += e;
            pieces += 1;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    (total, err, pieces)
}

/// Partial sum `sum_{k <= terms} chi_3(k) / k^2` scaled by `3 sqrt 3 / (4 pi)`.
pub fn l2_chi3_partial(terms: u64, prec: u32) -> Ball {
    let mut s = Ball::zero(prec);
    for k in 1..=terms {
        let t = Ball::one(prec).div_ball(&Ball::from_i64((k * k) as i64, prec));
        match k % 3 {
            1 => s = s.add_ball(&t),
            2 => s = s.sub_ball(&t),
            _ => {}
        }
    }
    s.mul_ball(&chi3_scale(prec))
}

fn chi3_scale(prec: u32) -> Ball {
    let three = Ball::from_i64(3, prec + 8);
    three
        .mul_ball(&three.sqrt())
        .div_ball(&elementary::pi(prec + 8).mul_i64(4))
        .set_prec(prec)
}

/// `(3 sqrt 3 / (4 pi)) L(2, chi_3)`, the logarithmic Mahler measure of
/// `1 + x + y`. Pairs `1/(3j+1)^2 - 1/(3j+2)^2` form a positive convex
/// decreasing sequence, so the tail after `J` pairs lies between the
/// integrals of its continuous extension from `J` and from `J - 1/2`.
pub fn dirichlet_l2_chi3(prec: u32) -> Ball {
    let p = prec + 16;
    let pairs: i64 = 20_000;
    let mut s = Ball::zero(p);
    let one = Ball::one(p);
    for j in 0..pairs {
        let a = Ball::from_i64((3 * j + 1) * (3 * j + 1), p);
        let b = Ball::from_i64((3 * j + 2) * (3 * j + 2), p);
        s = s.add_ball(&one.div_ball(&a).sub_ball(&one.div_ball(&b)));
    }
    // int_a^inf = 1 / (3 (3a+1)(3a+2))
    let tail = |twice_a: i64| -> Ball {
        // a = twice_a / 2: (3a+1)(3a+2) = (3 twice_a + 2)(3 twice_a + 4) / 4
        let u = Ball::from_i64(3 * twice_a + 2, p);
        let v = Ball::from_i64(3 * twice_a + 4, p);
        Ball::from_i64(4, p).div_ball(&u.mul_ball(&v).mul_i64(3))
    };
    let lo = tail(2 * pairs);
    let hi = tail(2 * pairs - 1);
    let t = lo.union(&hi);
    s.add_ball(&t).mul_ball(&chi3_scale(p)).set_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn one_variable() {
        let m = mahler_measure(&IntPolynomial::from_i64s(&[-2, 1]), 128).unwrap();
        assert!(m.contains_bigint(&BigInt::from(2)));
        let lehmer = IntPolynomial::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure(&lehmer, 128).unwrap();
        assert!((m.mid_f64() - 1.176280818259917).abs() < 1e-12);
        assert!(m.rad_f64() < 1e-30);
        // repeated factors multiply
        let sq = IntPolynomial::from_i64s(&[-2, 1]).pow(2).scale(&BigInt::from(3));
        let m = mahler_measure(&sq, 100).unwrap();
        assert!(m.contains_bigint(&BigInt::from(12)));
    }

    #[test]
    fn l_value_and_quadrature_agree() {
        let l = dirichlet_l2_chi3(128);
        assert!((l.mid_f64() - 0.3230659472194505).abs() < 1e-11);
        assert!(l.rad_f64() < 1e-11);
        let f = MultiPoly::from_terms(
            2,
            [(vec![0, 0], 1.into()), (vec![1, 0], 1.into()), (vec![0, 1], 1.into())],
        );
        let q = mahler_measure_2var(&f).unwrap();
        assert!((q.value.mid_f64() - l.mid_f64()).abs() < 1e-9);
        assert!(!q.rigorous);
        let first = l2_chi3_partial(1, 64);
        assert!((first.mid_f64() - 0.41349667).abs() < 1e-7);
    }
}
