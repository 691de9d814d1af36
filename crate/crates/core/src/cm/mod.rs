//! Reduced binary quadratic forms, Hilbert class polynomials and height
//! profiles of singular moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball, ComplexBall, Mag};
use crate::poly::IntPolynomial;

pub const MAX_CLASSPOLY_BITS: u32 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }
}

fn squarefree(mut n: i64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = -d;
    match d.rem_euclid(4) {
        1 => squarefree(m),
        0 => {
            let k = m / 4;
            (d / 4).rem_euclid(4) >= 2 && squarefree(k)
        }
        _ => false,
    }
}

/// Negative fundamental discriminants with `|D| <= max_abs`, by `|D|`.
pub fn fundamental_discriminants(max_abs: i64) -> Vec<i64> {
    (3..=max_abs).map(|m| -m).filter(|&d| is_fundamental(d)).collect()
}

/// All primitive reduced forms `(a, b, c)` of discriminant `d`.
pub fn reduced_forms(d: i64) -> Result<Vec<ReducedForm>> {
    if !is_fundamental(d) {
        return Err(Error::domain(format!("{d} is not a negative fundamental discriminant")));
    }
    let mut out = vec![];
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    Ok(out)
}

/// `q = exp(2 pi i tau)` with `tau = (-b + sqrt d)/(2a)`.
fn q_of(f: &ReducedForm, prec: u32) -> ComplexBall {
    let pi = elementary::pi(prec);
    let s = Ball::from_i64(-f.discriminant(), prec).sqrt();
    let re = pi.mul_ball(&s).div_i64(f.a).neg_ball();
    let im = pi.mul_i64(-f.b).div_i64(f.a);
    ComplexBall::new(re, im).exp()
}

/// `j(tau) = E4^3 / (q prod (1 - q^n)^24)`, with `E4 = 1 + 240 sum
/// sigma_3(n) q^n` and the product from the pentagonal series. Needs
/// `|q| <= 1/200`, which holds for reduced forms.
pub fn j_invariant(f: &ReducedForm, prec: u32) -> ComplexBall {
    let wp = prec + 32;
    let q = q_of(f, wp);
    let qa = q.mag_upper().to_f64();
    debug_assert!(qa <= 1.0 / 200.0);
    // terms until |q|^n < 2^-wp
    let nmax = ((wp as f64 * std::f64::consts::LN_2) / -qa.ln()).ceil() as usize + 2;
    let mut sigma = vec![0u64; nmax + 1];
    for dv in 1..=nmax {
        let c = (dv as u64).pow(3);
        for m in (dv..=nmax).step_by(dv) {
            sigma[m] += c;
        }
    }
    let mut e4 = ComplexBall::one(wp);
    let mut qn = ComplexBall::one(wp);
    let mut pows = vec![ComplexBall::one(wp)];
    for s in sigma.iter().skip(1) {
        qn = qn.mul(&q);
        pows.push(qn.clone());
        e4 = e4.add(&qn.mul_real(&Ball::from_i64(240 * *s as i64, wp)));
    }
    // sigma_3(n) <= n^4 and consecutive ratios stay below 1/2
    let n1 = nmax as f64 + 1.0;
    let lq = (qa * (1.0 + 1e-9)).log2();
    let tail_e4 = Mag::pow2((480f64.log2() + 4.0 * n1.log2() + n1 * lq).ceil() as i64 + 1);
    e4 = e4.with_radius(tail_e4);
    let mut eta = ComplexBall::zero(wp);
    let mut k: i64 = 0;
    loop {
        let mut done = true;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e > nmax {
                continue;
            }
            done = false;
            let t = if kk.rem_euclid(2) == 1 { pows[e].neg() } else { pows[e].clone() };
            eta = eta.add(&t);
        }
        if done {
            break;
        }
        k += 1;
    }
    // the remaining terms sit at distinct exponents > nmax
    eta = eta.with_radius(Mag::pow2((n1 * lq).ceil() as i64 + 1));
    let delta = q.mul(&eta.pow_u64(24));
    e4.pow_u64(3).div(&delta).set_prec(prec)
}

/// Coefficients rounded at two consecutive precisions must agree and each
/// ball must contain a unique integer.
pub fn class_polynomial(d: i64) -> Result<IntPolynomial> {
    let forms = reduced_forms(d)?;
    let bits: f64 = forms
        .iter()
        .map(|f| std::f64::consts::PI * ((-d) as f64).sqrt() / f.a as f64 / std::f64::consts::LN_2 + 2.0)
        .sum();
    let mut prec = bits as u32 + 64 + 2 * forms.len() as u32;
    let mut last: Option<IntPolynomial> = None;
    loop {
        if prec > MAX_CLASSPOLY_BITS {
            return Err(Error::resource(format!(
                "class polynomial of {d} needs more than {MAX_CLASSPOLY_BITS} bits"
            )));
        }
        if let Some(p) = try_round(&forms, prec) {
            if last.as_ref() == Some(&p) {
                return Ok(p);
            }
            last = Some(p);
        } else {
            last = None;
        }
        prec *= 2;
    }
}

fn try_round(forms: &[ReducedForm], prec: u32) -> Option<IntPolynomial> {
    // coefficients of prod (x - j_i), low degree first
    let mut cs = vec![ComplexBall::one(prec)];
    for f in forms {
        let j = j_invariant(f, prec);
        let mut next = vec![ComplexBall::zero(prec); cs.len() + 1];
        for (i, c) in cs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&j));
        }
        cs = next;
    }
    let mut out = Vec::with_capacity(cs.len());
    for c in &cs {
        if !c.im.contains_bigint(&BigInt::from(0)) {
            return None;
        }
        out.push(c.re.unique_integer()?);
    }
    Some(IntPolynomial::new(out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CMProfileRow {
    #[serde(rename = "disc")]
    pub disc: i64,
    pub class_number: usize,
    /// Weil height of `j(tau)` for any form.
    pub height: Ball,
    /// `log max(1, house)`.
    pub house_log: Ball,
    pub ratio_h: Ball,
    pub ratio_house: Ball,
}

/// Heights from the conjugates `j(tau_f)` directly: the class polynomial is
/// monic and irreducible, so `h = (1/h(D)) sum log max(1, |j(tau_f)|)`.
pub fn cm_profile_row(d: i64, prec: u32) -> Result<CMProfileRow> {
    let forms = reduced_forms(d)?;
    let wp = prec + 16;
    let one = Ball::one(wp);
    let mut sum = Ball::zero(wp);
    let mut house = Ball::zero(wp);
    for f in &forms {
        let a = j_invariant(f, wp).abs();
        sum = sum.add_ball(&elementary::ln(&a.max_ball(&one)));
        house = house.max_ball(&a);
    }
    let h = sum.div_i64(forms.len() as i64);
    let hl = elementary::ln(&house.max_ball(&one));
    let s = Ball::from_i64(-d, wp).sqrt();
    Ok(CMProfileRow {
        disc: d,
        class_number: forms.len(),
        ratio_h: h.div_ball(&s).set_prec(prec),
        ratio_house: hl.div_ball(&s).set_prec(prec),
        height: h.set_prec(prec),
        house_log: hl.set_prec(prec),
    })
}

pub fn cm_profile(discs: &[i64], prec: u32) -> Result<Vec<CMProfileRow>> {
    let mut sorted = discs.to_vec();
    sorted.sort_by_key(|d| d.abs());
    sorted.dedup();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        sorted.par_iter().map(|&d| cm_profile_row(d, prec)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sorted.iter().map(|&d| cm_profile_row(d, prec)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentProbe {
    pub gamma: f64,
    /// `(D, class_number^gamma * h)` sorted by `|D|`.
    pub values: Vec<(i64, f64)>,
    pub max: f64,
    pub min: f64,
    /// Least-squares slope of `log h_gamma` against `log |D|`, over rows
    /// with `h > 0`.
    pub trend_slope: f64,
    pub note: String,
}

pub fn weighted_exponent_probe(rows: &[CMProfileRow], gamma: f64) -> Result<ExponentProbe> {
    if rows.len() < 5 {
        return Err(Error::domain("the probe needs at least 5 rows"));
    }
    let mut rows: Vec<&CMProfileRow> = rows.iter().collect();
    rows.sort_by_key(|r| r.disc.abs());
    let values: Vec<(i64, f64)> = rows
        .iter()
        .map(|r| (r.disc, (r.class_number as f64).powf(gamma) * r.height.mid_f64()))
        .collect();
    let pts: Vec<(f64, f64)> = values
        .iter()
        .filter(|v| v.1 > 0.0)
        .map(|&(d, v)| ((d.abs() as f64).ln(), v.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(ExponentProbe {
        gamma,
        max: values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max),
        min: values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min),
        trend_slope: if sxx > 0.0 { sxy / sxx } else { 0.0 },
        values,
        note: "descriptive statistics on a finite sample; not a proof".into(),
    })
}

/// Degree of the class polynomial without computing it.
pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let f = |a, b, c| ReducedForm { a, b, c };
        assert_eq!(reduced_forms(-3).unwrap(), vec![f(1, 1, 1)]);
        assert_eq!(reduced_forms(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(reduced_forms(-23).unwrap(), vec![f(1, 1, 6), f(2, -1, 3), f(2, 1, 3)]);
        assert!(reduced_forms(-12).is_err());
        assert!(reduced_forms(5).is_err());
        assert_eq!(class_number(-163).unwrap(), 1);
        assert_eq!(class_number(-47).unwrap(), 5);
    }

    #[test]
    fn small_class_polynomials() {
        assert_eq!(class_polynomial(-3).unwrap(), IntPolynomial::from_i64s(&[0, 1]));
        assert_eq!(class_polynomial(-4).unwrap(), IntPolynomial::from_i64s(&[-1728, 1]));
        // j((1 + sqrt -7)/2) = -3375
        assert_eq!(class_polynomial(-7).unwrap(), IntPolynomial::from_i64s(&[3375, 1]));
        let h23 = class_polynomial(-23).unwrap();
        let want = IntPolynomial::new(vec![
            "12771880859375".parse().unwrap(),
            "-5151296875".parse().unwrap(),
            "3491750".parse().unwrap(),
            1.into(),
        ]);
        assert_eq!(h23, want);
        // 640320^3
        let h163 = class_polynomial(-163).unwrap();
        assert_eq!(h163.coeffs()[0], "262537412640768000".parse::<BigInt>().unwrap());
    }

    #[test]
    fn profile_rows() {
        let r = cm_profile_row(-4, 64).unwrap();
        assert!((r.height.mid_f64() - 1728f64.ln()).abs() < 1e-12);
        let r = cm_profile_row(-3, 64).unwrap();
        assert!(r.height.mid_f64().abs() < 1e-12);
        let r = cm_profile_row(-23, 64).unwrap();
        assert_eq!(r.class_number, 3);
        let x = r.ratio_house.mid_f64();
        assert!((2.0..=3.5).contains(&x), "{x}");
    }
}
