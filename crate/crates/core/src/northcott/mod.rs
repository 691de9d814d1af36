//! Northcott-number bounds, the prime tower, bounded enumeration.

mod enumerate;
mod qtr;
mod tower;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::heights::weil_height;
use crate::numeric::{decimal, elementary, Ball};

pub use enumerate::{enumerate_bounded, BoundedEnumeration, MAX_ENUM_DEGREE};
pub use qtr::{qtr_alpha, qtr_beta, qtr_beta_minpoly, dickson};
pub use tower::{
    build_tower, is_probable_prime, tower_field_elements, verify_tower, TowerSample, TowerSpec,
    TowerStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Weil,
    House,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    Simple,
    Optimal,
    PerJConservative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationRule {
    MinOverJ,
    MaxOverJ,
    TheoremSimple,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NorthcottBoundReport {
    pub direction: Direction,
    pub metric: Metric,
    pub c: f64,
    pub d: u32,
    pub per_j: BTreeMap<u32, Ball>,
    pub aggregate: Ball,
    pub aggregation_rule: AggregationRule,
}

pub(crate) fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn check_args(c: f64, d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("d must be positive"));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::domain("C must be a finite non-negative real"));
    }
    Ok(())
}

fn min_of(vals: &BTreeMap<u32, Ball>) -> Ball {
    let mut it = vals.values();
    let first = it.next().expect("d >= 1").clone();
    it.fold(first, |m, v| m.min_ball(v))
}

fn max_of(vals: &BTreeMap<u32, Ball>) -> Ball {
    let mut it = vals.values();
    let first = it.next().expect("d >= 1").clone();
    it.fold(first, |m, v| m.max_ball(v))
}

/// Lower bound for the Northcott number of a set whose degree-`d` elements
/// have minimal polynomials of coefficient height at least `C`.
pub fn nc_lower_bound(c: f64, d: u32, mode: BoundMode, prec: u32) -> Result<NorthcottBoundReport> {
    check_args(c, d)?;
    let cb = Ball::from_f64(c, prec);
    let per_j: BTreeMap<u32, Ball> = (1..=d)
        .map(|j| {
            let b = binom(d, j);
            let v = cb
                .sub_ball(&elementary::ln_bigint(&b, prec))
                .div_ball(&Ball::from_bigint(&(b * j), prec));
            (j, v)
        })
        .collect();
    let (aggregate, rule) = match mode {
        BoundMode::Simple => {
            let v = cb
                .sub_ball(&elementary::ln2(prec).mul_i64(d as i64))
                .div_ball(&Ball::from_bigint(&(BigInt::from(d) << d), prec));
            (v, AggregationRule::TheoremSimple)
        }
        BoundMode::Optimal => (min_of(&per_j), AggregationRule::MinOverJ),
        BoundMode::PerJConservative => {
            return Err(Error::domain("per_j_conservative applies to upper bounds"))
        }
    };
    Ok(NorthcottBoundReport {
        direction: Direction::Lower,
        metric: Metric::Weil,
        c,
        d,
        per_j,
        aggregate: aggregate.clamp_nonneg(),
        aggregation_rule: rule,
    })
}

/// House analogue of [`nc_lower_bound`] for sets of algebraic integers.
pub fn nc_house_lower_bound(
    c: f64,
    d: u32,
    mode: BoundMode,
    prec: u32,
) -> Result<NorthcottBoundReport> {
    check_args(c, d)?;
    let cb = Ball::from_f64(c, prec);
    let root = |j: u32| -> Ball {
        if c == 0.0 {
            Ball::zero(prec)
        } else {
            elementary::exp(&elementary::ln(&cb).div_i64(j as i64))
        }
    };
    let per_j: BTreeMap<u32, Ball> = (1..=d)
        .map(|j| (j, root(j).div_ball(&Ball::from_bigint(&binom(d, j), prec))))
        .collect();
    let (aggregate, rule) = match mode {
        BoundMode::Simple => (root(d).mul_2exp(-(d as i64)), AggregationRule::TheoremSimple),
        BoundMode::Optimal => (min_of(&per_j), AggregationRule::MinOverJ),
        BoundMode::PerJConservative => {
            return Err(Error::domain("per_j_conservative applies to upper bounds"))
        }
    };
    Ok(NorthcottBoundReport {
        direction: Direction::Lower,
        metric: Metric::House,
        c,
        d,
        per_j,
        aggregate: aggregate.clamp_nonneg(),
        aggregation_rule: rule,
    })
}

/// Upper bound for the Northcott number of a field in which infinitely many
/// degree-`d` elements have minimal polynomials of coefficient height `<= C`.
/// The per-`j` values are aggregated by their maximum.
pub fn nc_upper_bound(c: f64, d: u32, mode: BoundMode, prec: u32) -> Result<NorthcottBoundReport> {
    check_args(c, d)?;
    let cb = Ball::from_f64(c, prec);
    let per_j: BTreeMap<u32, Ball> = (1..=d)
        .map(|j| {
            let b = binom(d, j);
            let v = cb
                .mul_ball(&Ball::from_bigint(&(&b * j), prec))
                .add_ball(&elementary::ln_bigint(&b, prec));
            (j, v)
        })
        .collect();
    let (aggregate, rule) = match mode {
        BoundMode::Simple => {
            let v = cb
                .mul_ball(&Ball::from_bigint(&(BigInt::from(d) << d), prec))
                .add_ball(&elementary::ln2(prec).mul_i64(d as i64));
            (v, AggregationRule::TheoremSimple)
        }
        BoundMode::PerJConservative => (max_of(&per_j), AggregationRule::MaxOverJ),
        BoundMode::Optimal => return Err(Error::domain("optimal mode applies to lower bounds")),
    };
    Ok(NorthcottBoundReport {
        direction: Direction::Upper,
        metric: Metric::Weil,
        c,
        d,
        per_j,
        aggregate,
        aggregation_rule: rule,
    })
}

/// `max(t - c, 0)`.
pub fn relative_floor(t: f64, c: f64) -> Result<f64> {
    if !(t >= 0.0 && c >= 0.0) || !t.is_finite() || !c.is_finite() {
        return Err(Error::domain("relative_floor needs finite t, c >= 0"));
    }
    Ok((t - c).max(0.0))
}

/// One slot of the coefficient-height check for an algebraic number.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub j: u32,
    /// `h(e_j)` for the `j`-th elementary symmetric function of the conjugates.
    pub height: Ball,
    /// `binom(d, j) j h(x) + log binom(d, j)`.
    pub per_j_bound: Ball,
    /// `d 2^d h(x) + d log 2`.
    pub aggregate_bound: Ball,
    pub holds: bool,
}

/// Heights of the coefficients of the monic minimal polynomial of `x`
/// against the per-slot and aggregate bounds. A check fails only when the
/// enclosures certify a violation.
pub fn coefficient_checks(x: &AlgebraicNumber, prec: u32) -> Result<Vec<CoefficientCheck>> {
    let f = x.minpoly();
    let d = f.deg() as u32;
    let h = weil_height(x, prec)?;
    let lc = f.lc();
    let aggregate_bound = h
        .mul_ball(&Ball::from_bigint(&(BigInt::from(d) << d), prec))
        .add_ball(&elementary::ln2(prec).mul_i64(d as i64));
    (1..=d)
        .map(|j| {
            let e = BigRational::new(f.coeff((d - j) as usize), lc.clone());
            let height = rational_height(&e, prec);
            let b = binom(d, j);
            let per_j_bound = h
                .mul_ball(&Ball::from_bigint(&(&b * j), prec))
                .add_ball(&elementary::ln_bigint(&b, prec));
            let holds = height.possibly_le(&per_j_bound) && height.possibly_le(&aggregate_bound);
            Ok(CoefficientCheck {
                j,
                height,
                per_j_bound,
                aggregate_bound: aggregate_bound.clone(),
                holds,
            })
        })
        .collect()
}

fn rational_height(q: &BigRational, prec: u32) -> Ball {
    if q.is_zero() {
        return Ball::zero(prec);
    }
    elementary::ln_bigint(&q.numer().abs().max(q.denom().clone()), prec)
}

/// A height cutoff: an exact decimal or rational, or the log of a positive
/// rational. Parses `0.4`, `3/2`, `log 2`, `log(2)`, `ln 3/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightCap {
    Value(BigRational),
    LogOf(BigRational),
}

impl HeightCap {
    pub fn log(q: i64) -> HeightCap {
        HeightCap::LogOf(BigRational::from_integer(q.into()))
    }

    pub fn value(q: BigRational) -> HeightCap {
        HeightCap::Value(q)
    }

    pub fn to_ball(&self, prec: u32) -> Ball {
        match self {
            HeightCap::Value(q) => Ball::from_rational(q, prec),
            HeightCap::LogOf(q) => elementary::ln_rational(q, prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ball(64).mid_f64()
    }

    pub fn is_negative(&self) -> bool {
        match self {
            HeightCap::Value(q) => q.is_negative(),
            HeightCap::LogOf(q) => q < &BigRational::one(),
        }
    }
}

impl FromStr for HeightCap {
    type Err = Error;
    fn from_str(s: &str) -> Result<HeightCap> {
        let t = s.trim();
        let stripped = ["log", "ln"].iter().find_map(|p| t.strip_prefix(p));
        match stripped {
            Some(rest) => {
                let rest = rest.trim();
                let rest = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(rest)
                    .trim();
                let q = decimal::parse_rational(rest)?;
                if !q.is_positive() {
                    return Err(Error::parse(format!("log of non-positive value in {s:?}")));
                }
                Ok(HeightCap::LogOf(q))
            }
            None => Ok(HeightCap::Value(decimal::parse_rational(t)?)),
        }
    }
}

impl fmt::Display for HeightCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightCap::Value(q) => write!(f, "{}", decimal::rational_string(q)),
            HeightCap::LogOf(q) => write!(f, "log({})", decimal::rational_string(q)),
        }
    }
}

impl Serialize for HeightCap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeightCap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<HeightCap, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of comparing a height enclosure with a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapTest {
    Below,
    Above,
    /// Still overlapping at the largest tried precision; treated as `<=`.
    Boundary,
}

/// Compares `h(x)` with the cap, refining precision until decided.
pub fn compare_height(x: &AlgebraicNumber, cap: &HeightCap) -> Result<CapTest> {
    let mut prec = 64;
    loop {
        let h = weil_height(x, prec)?;
        let b = cap.to_ball(prec);
        if h.certainly_le(&b) {
            return Ok(CapTest::Below);
        }
        if b.certainly_lt(&h) {
            return Ok(CapTest::Above);
        }
        if prec >= 1024 {
            return Ok(CapTest::Boundary);
        }
        prec *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(b: &Ball, v: f64) -> bool {
        (b.mid_f64() - v).abs() < 1e-12
    }

    #[test]
    fn lower_bounds() {
        let r = nc_lower_bound(10.0, 2, BoundMode::Simple, 128).unwrap();
        assert!(near(&r.aggregate, (10.0 - 2.0 * 2f64.ln()) / 8.0));
        let r = nc_lower_bound(10.0, 2, BoundMode::Optimal, 128).unwrap();
        assert!(near(&r.aggregate, (10.0 - 2f64.ln()) / 2.0));
        assert!(near(&r.per_j[&2], 5.0));
        let r = nc_lower_bound(0.0, 3, BoundMode::Simple, 128).unwrap();
        assert!(r.aggregate.is_zero_exact());
        assert!(nc_lower_bound(1.0, 0, BoundMode::Simple, 64).is_err());
    }

    #[test]
    fn house_bounds() {
        let r = nc_house_lower_bound(16.0, 2, BoundMode::Simple, 128).unwrap();
        assert!(near(&r.aggregate, 1.0));
        let r = nc_house_lower_bound(16.0, 2, BoundMode::Optimal, 128).unwrap();
        assert!(near(&r.aggregate, 4.0));
        let r = nc_house_lower_bound(0.0, 4, BoundMode::Optimal, 128).unwrap();
        assert!(r.aggregate.is_zero_exact());
    }

    #[test]
    fn upper_bounds() {
        let r = nc_upper_bound(0.0, 2, BoundMode::PerJConservative, 128).unwrap();
        assert!(near(&r.per_j[&1], 2f64.ln()) && r.per_j[&2].is_zero_exact());
        assert!(near(&r.aggregate, 2f64.ln()));
        assert_eq!(r.aggregation_rule, AggregationRule::MaxOverJ);
        let r = nc_upper_bound(1.0, 1, BoundMode::Simple, 128).unwrap();
        assert!(near(&r.aggregate, 2.0 + 2f64.ln()));
        let r = nc_upper_bound(0.0, 1, BoundMode::Simple, 128).unwrap();
        assert!(near(&r.aggregate, 2f64.ln()));
    }

    #[test]
    fn floor_and_caps() {
        assert_eq!(relative_floor(5.0, 2.0).unwrap(), 3.0);
        assert_eq!(relative_floor(1.0, 3.0).unwrap(), 0.0);
        assert_eq!(relative_floor(0.7, 0.0).unwrap(), 0.7);
        let c: HeightCap = "log(2)".parse().unwrap();
        assert_eq!(c, HeightCap::log(2));
        let c: HeightCap = "0.4".parse().unwrap();
        assert_eq!(c, HeightCap::Value(BigRational::new(2.into(), 5.into())));
        assert_eq!(c.to_string().parse::<HeightCap>().unwrap(), c);
    }

    #[test]
    fn coefficient_slots() {
        let x = AlgebraicNumber::root_of(&crate::poly::IntPolynomial::from_i64s(&[3, -1, 0, 2]), 0).unwrap();
        for c in coefficient_checks(&x, 128).unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }
}
