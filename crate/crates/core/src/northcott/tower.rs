//! Primes `p_i` and degrees `d_i` with `p_i^(1/d_i) -> exp(2t)`, and a
//! sample of small-height elements of the resulting fields.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::bounded_rationals;
use super::{compare_height, CapTest, HeightCap};
use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball, Float};

const MAX_TOWER_DEGREE: u32 = 64;
const MAX_PRIME_BITS: u64 = 4096;
const MAX_SCAN: u64 = 2_000_000;
/// Rounds of Miller-Rabin above `2^64`, with the first primes as bases.
const MR_ROUNDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerStep {
    #[serde(with = "crate::serde_util::bigint")]
    pub p: BigInt,
    pub d: u32,
    /// `eps_i = 2^-i`, stored as `i`.
    pub eps_exp: u32,
    /// `false` when `p >= 2^64` and primality rests on Miller-Rabin.
    pub proven_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub t: f64,
    pub steps: Vec<TowerStep>,
}

impl TowerSpec {
    pub fn degree_product(&self, k: usize) -> u64 {
        self.steps[..k].iter().map(|s| s.d as u64).product()
    }
}

/// Greedy construction: step `i` takes the smallest `d` for which
/// `[(e^2t - 2^-i)^d, (e^2t + 2^-i)^d]` contains a prime above `p_{i-1}`, and
/// the smallest such prime.
pub fn build_tower(t: f64, count: usize) -> Result<TowerSpec> {
    if !(t.is_finite() && t > 0.0) || count == 0 {
        return Err(Error::domain("build_tower needs t > 0 and count >= 1"));
    }
    let mut spec = TowerSpec { t, steps: vec![] };
    let mut prev = BigInt::zero();
    for i in 1..=count as u32 {
        match next_step(t, i, &prev) {
            Ok(step) => {
                prev = step.p.clone();
                spec.steps.push(step);
            }
            Err(e) => {
                let partial = serde_json::to_string(&spec).unwrap_or_default();
                return Err(Error::resource(format!("{e}; partial tower: {partial}")));
            }
        }
    }
    Ok(spec)
}

/// Certified integer range strictly inside `[(c - eps)^d, (c + eps)^d]`,
/// or `None` when it is empty.
fn admissible_range(t: f64, i: u32, d: u32) -> Result<Option<(BigInt, BigInt)>> {
    let mut prec = 64 + 2 * d * (2.0 * t).ceil() as u32 + i;
    loop {
        let c = elementary::exp(&Ball::from_f64(2.0 * t, prec).set_prec(prec));
        let eps = Ball::one(prec).mul_2exp(-(i as i64));
        let lo = c.sub_ball(&eps).pow_u64(d as u64);
        let hi = c.add_ball(&eps).pow_u64(d as u64);
        if hi.mag_upper().log2_ceil() > MAX_PRIME_BITS as i64 {
            return Err(Error::resource("prime interval beyond the integer-size cap"));
        }
        // each endpoint must be pinned between consecutive integers
        let lo_ok = lo.lower().floor() == lo.upper().floor();
        let hi_ok = hi.lower().floor() == hi.upper().floor();
        if lo_ok && hi_ok {
            let a = ceil(&lo.upper());
            let b = hi.lower().floor();
            return Ok(if a <= b { Some((a, b)) } else { None });
        }
        prec *= 2;
        if prec > 1 << 16 {
            return Err(Error::resource("could not pin the prime interval endpoints"));
        }
    }
}

fn ceil(x: &Float) -> BigInt {
    let f = x.floor();
    if x.is_integer() {
        f
    } else {
        f + 1
    }
}

fn next_step(t: f64, i: u32, prev: &BigInt) -> Result<TowerStep> {
    for d in 1..=MAX_TOWER_DEGREE {
        let Some((a, b)) = admissible_range(t, i, d)? else { continue };
        if &b <= prev {
            continue;
        }
        let mut n = a.max(prev + 1);
        let mut scanned = 0u64;
        while n <= b {
            if is_probable_prime(&n) {
                let proven_prime = n.bits() <= 64;
                return Ok(TowerStep { p: n, d, eps_exp: i, proven_prime });
            }
            n += 1;
            scanned += 1;
            if scanned > MAX_SCAN {
                return Err(Error::resource("prime scan exceeded its cap"));
            }
        }
    }
    Err(Error::resource(format!("no admissible prime with d <= {MAX_TOWER_DEGREE} at step {i}")))
}

fn small_primes() -> &'static [u64] {
    static P: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    P.get_or_init(|| {
        std::iter::once(2)
            .chain(crate::poly::modp::odd_primes())
            .take(MR_ROUNDS)
            .collect()
    })
}

/// Miller-Rabin. Deterministic below `2^64` (first twelve prime bases);
/// above, `MR_ROUNDS` rounds with the first prime bases.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    let small = small_primes();
    for &p in small {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let dd = &nm1 >> s;
    let rounds = if n.bits() <= 64 { 12 } else { MR_ROUNDS };
    'bases: for &a in small.iter().take(rounds) {
        let mut x = BigInt::from(a).modpow(&dd, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Outcome of recomputing one step's invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepCheck {
    pub i: usize,
    /// Enclosure of `|p^(1/d) - e^(2t)|`.
    pub deviation: Ball,
    pub within_eps: bool,
    pub increasing: bool,
    pub prime: bool,
}

/// Recomputes every invariant of a tower.
pub fn verify_tower(spec: &TowerSpec) -> Vec<StepCheck> {
    let prec = 256;
    let c = elementary::exp(&Ball::from_f64(2.0 * spec.t, prec));
    let mut prev = BigInt::zero();
    spec.steps
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let eps = Ball::one(prec).mul_2exp(-(s.eps_exp as i64));
            let pb = Ball::from_bigint(&s.p, prec);
            // (c - eps)^d <= p <= (c + eps)^d
            let lo = c.sub_ball(&eps).pow_u64(s.d as u64);
            let hi = c.add_ball(&eps).pow_u64(s.d as u64);
            let root = elementary::exp(&elementary::ln(&pb).div_i64(s.d as i64));
            let check = StepCheck {
                i: k + 1,
                deviation: root.sub_ball(&c).abs(),
                within_eps: lo.certainly_le(&pb) && pb.certainly_le(&hi) && s.eps_exp as usize == k + 1,
                increasing: s.p > prev,
                prime: is_probable_prime(&s.p),
            };
            prev = s.p.clone();
            check
        })
        .collect()
}

/// Elements of `Q(p_1^(1/d_1), ..., p_k^(1/d_k))` of degree `<= d` and height
/// `<= cap`. The sample consists of rationals, `q m` and `m + a` for
/// monomials `m = prod p_i^(e_i/d_i)`, rationals `q` of height `<= cap` and
/// `a in {-1, 1}`. Every element is in the field with certified height; the
/// sample is not complete.
#[derive(Clone, Debug, Serialize)]
pub struct TowerSample {
    pub label: &'static str,
    pub k: usize,
    pub elements: Vec<AlgebraicNumber>,
}

pub fn tower_field_elements(
    spec: &TowerSpec,
    k: usize,
    d: u32,
    cap: &HeightCap,
) -> Result<TowerSample> {
    if k > spec.steps.len() {
        return Err(Error::domain("truncation beyond the tower length"));
    }
    if d == 0 || spec.degree_product(k).saturating_mul(d as u64) > MAX_TOWER_DEGREE as u64 {
        return Err(Error::domain(format!(
            "field degree times degree cap exceeds {MAX_TOWER_DEGREE}"
        )));
    }
    let rats = bounded_rationals(cap)?;
    let mut out: BTreeSet<AlgebraicNumber> = rats.iter().map(AlgebraicNumber::from_rational).collect();
    let steps = &spec.steps[..k];
    let l = steps.iter().fold(1u32, |acc, s| acc.lcm(&s.d));
    let mut exps = vec![0u32; k];
    loop {
        // next exponent vector
        let mut j = 0;
        while j < k {
            exps[j] += 1;
            if exps[j] < steps[j].d {
                break;
            }
            exps[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
        // m = (prod p_i^(e_i L / d_i))^(1/L)
        let mut radicand = BigInt::one();
        for (s, &e) in steps.iter().zip(&exps) {
            radicand *= s.p.pow(e * l / s.d);
        }
        let m = AlgebraicNumber::nth_root(&BigRational::from_integer(radicand), l)?;
        if m.degree() as u32 > d {
            continue;
        }
        let mut cands: Vec<AlgebraicNumber> = rats
            .iter()
            .filter(|q| !q.is_zero())
            .map(|q| m.mul_rational(q))
            .collect();
        for a in [-1i64, 1] {
            cands.push(m.add_rational(&BigRational::from_integer(a.into()))?);
        }
        for x in cands {
            if compare_height(&x, cap)? != CapTest::Above {
                out.insert(x);
            }
        }
    }
    Ok(TowerSample {
        label: "sound sample",
        k,
        elements: out.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<i64> = (0..60).filter(|&n| is_probable_prime(&BigInt::from(n))).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        // Carmichael numbers and a strong pseudoprime to base 2
        for n in [561i64, 1105, 2047, 3215031751] {
            assert!(!is_probable_prime(&BigInt::from(n)));
        }
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&((BigInt::one() << 128) + 1)));
    }

    #[test]
    fn tower_for_t_one() {
        let spec = build_tower(1.0, 3).unwrap();
        assert_eq!((spec.steps[0].p.clone(), spec.steps[0].d), (BigInt::from(7), 1));
        assert!(spec.steps.windows(2).all(|w| w[0].p < w[1].p));
        for c in verify_tower(&spec) {
            assert!(c.within_eps && c.increasing && c.prime, "{c:?}");
        }
        let one = build_tower(0.3, 1).unwrap();
        assert!(verify_tower(&one)[0].deviation.mid_f64() <= 0.5);
    }

    #[test]
    fn tower_sample() {
        let spec = build_tower(1.0, 2).unwrap();
        let cap = HeightCap::Value(BigRational::from_integer(1.into()));
        let s0 = tower_field_elements(&spec, 0, 2, &cap).unwrap();
        assert!(s0.elements.iter().all(|x| x.is_rational()));
        assert_eq!(s0.elements.len(), bounded_rationals(&cap).unwrap().len());
        let s1 = tower_field_elements(&spec, 1, 1, &cap).unwrap();
        assert!(s1.elements.iter().all(|x| x.is_rational()));
        // second step is sqrt 53 or similar: (log p)/d <= 1 needs p <= e^2
        let s2 = tower_field_elements(&spec, 2, 2, &"2.5".parse().unwrap()).unwrap();
        let p = &spec.steps[1].p;
        let r = AlgebraicNumber::nth_root(&BigRational::from_integer(p.clone()), spec.steps[1].d).unwrap();
        assert!(s2.elements.contains(&r));
    }
}
