//! Lower bounds for the Northcott number that force finiteness of small
//! points, cycles and preperiodic subvarieties.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::chow::c_n;
use crate::dynamics::dyn_constants;
use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Main,
    Proj,
    Abvar,
    Dyn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub theorem: Theorem,
    pub inputs: serde_json::Value,
    pub threshold: Ball,
    pub irreducible_variant: Option<Ball>,
    pub relative_shift: Option<f64>,
    /// `log10(threshold)`, for thresholds too large to print.
    pub log10_threshold: Ball,
    /// The sum with every constant spelled out.
    pub formula: String,
}

fn check_pos(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("{name} must be positive and finite")));
    }
    Ok(())
}

fn check_nonneg(name: &str, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("{name} must be non-negative and finite")));
    }
    Ok(())
}

fn ball(x: f64, prec: u32) -> Ball {
    Ball::from_f64(x, prec)
}

fn report(
    theorem: Theorem,
    inputs: serde_json::Value,
    threshold: Ball,
    irreducible_variant: Option<Ball>,
    relative_shift: Option<f64>,
    formula: String,
    prec: u32,
) -> ThresholdReport {
    let log10_threshold = elementary::log10(&threshold).set_prec(prec);
    ThresholdReport {
        theorem,
        inputs,
        threshold: threshold.set_prec(prec),
        irreducible_variant: irreducible_variant.map(|b| b.set_prec(prec)),
        relative_shift,
        log10_threshold,
        formula,
    }
}

/// `d (C + (7/2) n log 2 + c(n) + log 2)`, plus `relative_c` if given;
/// the irreducible variant drops `d log 2`.
pub fn threshold_proj(n: u32, d: u32, c: f64, relative_c: Option<f64>, prec: u32) -> Result<ThresholdReport> {
    if n == 0 || d == 0 {
        return Err(Error::domain("n and d must be at least 1"));
    }
    check_pos("C", c)?;
    if let Some(r) = relative_c {
        check_nonneg("relative c", r)?;
    }
    let wp = prec + 32;
    let l2 = elementary::ln2(wp);
    let r = l2.mul_i64(7 * n as i64).mul_2exp(-1)
        .add_ball(&Ball::from_rational(&c_n(n as usize)?, wp))
        .add_ball(&l2);
    let main = threshold_main(d, c, &r, wp)?;
    let shift = relative_c.map(|x| ball(x, wp)).unwrap_or_else(|| Ball::zero(wp));
    let t = main.threshold.add_ball(&shift);
    let irr = t.sub_ball(&l2.mul_i64(d as i64));
    Ok(report(
        Theorem::Proj,
        json!({"n": n, "d": d, "C": c, "relative_c": relative_c}),
        t,
        Some(irr),
        relative_c,
        format!(
            "{d}*({c} + (7/2)*{n}*log 2 + {} + log 2){}",
            crate::numeric::decimal::rational_string(&c_n(n as usize)?),
            relative_c.map(|x| format!(" + {x}")).unwrap_or_default()
        ),
        prec,
    ))
}

/// `(d/16)(C + 4^(g+1) h2 + 3g log 2 + c(n) + log 2)`; the irreducible
/// variant drops `d log 2 / 16`.
pub fn threshold_abvar(g: u32, d: u32, c: f64, h2_theta_zero: f64, n: u32, prec: u32) -> Result<ThresholdReport> {
    if g == 0 || d == 0 || n == 0 {
        return Err(Error::domain("g, d and n must be at least 1"));
    }
    check_pos("C", c)?;
    check_nonneg("h2(theta(0))", h2_theta_zero)?;
    let wp = prec + 32 + 2 * g;
    let l2 = elementary::ln2(wp);
    let four = Ball::from_bigint(&(BigInt::from(1) << (2 * (g as usize + 1))), wp);
    let inner = ball(c, wp)
        .add_ball(&four.mul_ball(&ball(h2_theta_zero, wp)))
        .add_ball(&l2.mul_i64(3 * g as i64))
        .add_ball(&Ball::from_rational(&c_n(n as usize)?, wp))
        .add_ball(&l2);
    let t = inner.mul_i64(d as i64).mul_2exp(-4);
    let irr = t.sub_ball(&l2.mul_i64(d as i64).mul_2exp(-4));
    Ok(report(
        Theorem::Abvar,
        json!({"g": g, "d": d, "C": c, "h2_theta_zero": h2_theta_zero, "n": n}),
        t,
        Some(irr),
        None,
        format!(
            "({d}/16)*({c} + 4^{}*{h2_theta_zero} + 3*{g}*log 2 + {} + log 2)",
            g + 1,
            crate::numeric::decimal::rational_string(&c_n(n as usize)?)
        ),
        prec,
    ))
}

/// `d (C + C1 h(f) + C2 + c(n))`; no irreducible variant.
pub fn threshold_dyn(n: u32, big_d: u32, d: u32, c: f64, h_f: f64, prec: u32) -> Result<ThresholdReport> {
    if d == 0 {
        return Err(Error::domain("d must be at least 1"));
    }
    check_pos("C", c)?;
    check_nonneg("h(f)", h_f)?;
    let k = dyn_constants(n, big_d, prec + 32)?;
    let wp = prec + 32;
    let c2 = match &k.c2 {
        Some(s) => Ball::from_bigint(&s.parse::<BigInt>().expect("integer"), wp),
        None => elementary::exp(&k.log_c2.clone().set_prec(wp)),
    };
    let t = ball(c, wp)
        .add_ball(&Ball::from_bigint(&k.c1, wp).mul_ball(&ball(h_f, wp)))
        .add_ball(&c2)
        .add_ball(&Ball::from_rational(&c_n(n as usize)?, wp))
        .mul_i64(d as i64);
    Ok(report(
        Theorem::Dyn,
        json!({"n": n, "D": big_d, "d": d, "C": c, "h_f": h_f, "log_C2": k.log_c2}),
        t,
        None,
        None,
        format!(
            "{d}*({c} + {}*{h_f} + 3^{n}*{n}^{}*{}^{} + {})",
            k.c1,
            n + 1,
            2 * big_d,
            k.c2_exponent,
            crate::numeric::decimal::rational_string(&c_n(n as usize)?)
        ),
        prec,
    ))
}

/// `d (C + R)`; the irreducible variant drops `d log 2`.
pub fn threshold_main(d: u32, c: f64, r: &Ball, prec: u32) -> Result<ThresholdReport> {
    if d == 0 {
        return Err(Error::domain("d must be at least 1"));
    }
    if r.is_negative() {
        return Err(Error::domain("R must be non-negative"));
    }
    let wp = prec.max(r.prec()) + 32;
    let t = ball(c, wp).add_ball(r).mul_i64(d as i64);
    let irr = t.sub_ball(&elementary::ln2(wp).mul_i64(d as i64));
    Ok(report(
        Theorem::Main,
        json!({"d": d, "C": c, "R": r}),
        t,
        Some(irr),
        None,
        format!("{d}*({c} + R)"),
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = threshold_proj(1, 1, 1.0, None, 64).unwrap();
        let want = 1.5 + 4.5 * 2f64.ln();
        assert!((p.threshold.mid_f64() - want).abs() < 1e-14);
        assert!((p.irreducible_variant.unwrap().mid_f64() - (want - 2f64.ln())).abs() < 1e-14);
        let s = threshold_proj(1, 1, 1.0, Some(2.0), 64).unwrap();
        assert!((s.threshold.mid_f64() - want - 2.0).abs() < 1e-14);
        let a = threshold_abvar(1, 16, 1.0, 0.0, 3, 64).unwrap();
        assert!((a.threshold.mid_f64() - (1.0 + 4.0 * 2f64.ln() + 11.0 / 12.0)).abs() < 1e-14);
        let a1 = threshold_abvar(1, 16, 1.0, 1.0, 3, 64).unwrap();
        assert!((a1.threshold.mid_f64() - a.threshold.mid_f64() - 16.0).abs() < 1e-12);
        let dy = threshold_dyn(1, 2, 1, 1.0, 0.0, 64).unwrap();
        assert!((dy.log10_threshold.mid_f64() - 39.01).abs() < 0.01);
        assert!(dy.irreducible_variant.is_none());
        let dy1 = threshold_dyn(1, 2, 1, 1.0, 1.0, 128).unwrap();
        let dy0 = threshold_dyn(1, 2, 1, 1.0, 0.0, 128).unwrap();
        assert!((dy1.threshold.sub_ball(&dy0.threshold).mid_f64() - 20.0).abs() < 1e-6);
        let m = threshold_main(2, 1.0, &Ball::from_i64(3, 64), 64).unwrap();
        assert_eq!(m.threshold.mid_f64(), 8.0);
        // huge C2 still gives a finite log10
        let big = threshold_dyn(3, 5, 1, 1.0, 0.0, 64).unwrap();
        assert!(big.log10_threshold.is_finite());
        // proj is main with its explicit R
        let l2 = elementary::ln2(256);
        let r = l2.mul_i64(7 * 2).mul_2exp(-1).add_ball(&Ball::from_rational(&c_n(2).unwrap(), 256)).add_ball(&l2);
        let pm = threshold_main(3, 1.25, &r, 128).unwrap();
        let pp = threshold_proj(2, 3, 1.25, None, 128).unwrap();
        let diff = pm.threshold.sub_ball(&pp.threshold);
        assert!(diff.contains_zero() && diff.rad_f64() < 1e-30);
    }
}
