//! Census of small-height objects: enumerate, certify heights against a
//! cutoff, bucket, and report.
//!
//! A census never proves finiteness over an infinite field; it lists what
//! lies below a cutoff in a finite search space and says whether that
//! space provably contains everything below the cutoff.

mod emit;

pub use emit::{emit_report, ReportFormat};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebraic::AlgebraicNumber;
use crate::dynamics::{
    canonical_height, forms_from_json, height_gap_bound, make_selfmap, preperiodic_test, Preperiodicity,
    ProjectiveSelfMap,
};
use crate::error::{Error, Result};
use crate::heights::{weil_height, ProjectiveTuple};
use crate::northcott::{build_tower, enumerate_bounded, tower_field_elements, HeightCap};
use crate::numeric::decimal::{render, DecimalBall};
use crate::numeric::{elementary, Ball};
use crate::poly::{isolate_roots, IntPolynomial};
use crate::thresholds::{Theorem, ThresholdReport};

const MAX_CANDIDATES: u64 = 2_000_000;
const MAX_CYCLES: usize = 1_000_000;
const PREPERIODIC_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseField {
    Rational,
    /// The field generated by the first `k` steps of `build_tower(t, count)`.
    Tower { t: f64, count: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Points { n: u32 },
    ZeroCycles { n: u32 },
    PlaneDivisors,
    /// Rational points of `P^n` under a self-map given in the
    /// `[{"2,0": "1"}, ...]` form notation.
    Dynamics { map: Value },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSource {
    pub theorem: Theorem,
    pub threshold: DecimalBall,
}

impl From<&ThresholdReport> for ThresholdSource {
    fn from(r: &ThresholdReport) -> Self {
        ThresholdSource {
            theorem: r.theorem,
            threshold: render(&r.threshold),
        }
    }
}

fn default_buckets() -> usize {
    4
}

fn default_max_witnesses() -> usize {
    10_000
}

fn default_prec() -> u32 {
    128
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub base: BaseField,
    pub target: Target,
    pub degree_cap: u32,
    pub cutoff: HeightCap,
    #[serde(default = "default_buckets")]
    pub buckets: usize,
    #[serde(default = "default_max_witnesses")]
    pub max_witnesses: usize,
    #[serde(default)]
    pub threshold: Option<ThresholdSource>,
    #[serde(default = "default_prec")]
    pub precision_bits: u32,
}

impl ExperimentConfig {
    pub fn rational_points(n: u32, degree_cap: u32, cutoff: HeightCap) -> ExperimentConfig {
        ExperimentConfig {
            base: BaseField::Rational,
            target: Target::Points { n },
            degree_cap,
            cutoff,
            buckets: default_buckets(),
            max_witnesses: default_max_witnesses(),
            threshold: None,
            precision_bits: default_prec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Soundness {
    /// Every object of the target below the cutoff was examined.
    Complete,
    /// Every witness is genuine, but some may be missing.
    SoundSample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightUsed {
    /// Sup-norm projective height, additive over cycle components.
    Toric,
    /// Log of the largest coefficient of a primitive defining form.
    Coefficient,
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bucket {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub object: Value,
    pub degree: u32,
    pub height: DecimalBall,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub soundness: Soundness,
    pub height: HeightUsed,
    pub total: usize,
    pub candidates_examined: usize,
    /// Candidates whose height could not be separated from the cutoff.
    pub undecided: usize,
    pub buckets: Vec<Bucket>,
    pub witnesses: Vec<Witness>,
    pub witnesses_truncated: bool,
    /// Whether the cutoff lies certainly below the attached threshold.
    pub cutoff_below_threshold: Option<bool>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn empty(config: ExperimentConfig) -> ExperimentReport {
        ExperimentReport {
            config,
            soundness: Soundness::SoundSample,
            height: HeightUsed::Toric,
            total: 0,
            candidates_examined: 0,
            undecided: 0,
            buckets: vec![],
            witnesses: vec![],
            witnesses_truncated: false,
            cutoff_below_threshold: None,
            notes: vec![],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Below,
    Above,
    Undecided,
}

/// A height known either as a ball or exactly as `log(a) / root`, with
/// `a >= 1` rational.
struct Height {
    ball: Ball,
    log_of: Option<BigRational>,
    root: u32,
}

impl Height {
    fn log_int(m: &BigInt, prec: u32) -> Height {
        Height::log_root(m, 1, prec)
    }

    fn log_root(m: &BigInt, root: u32, prec: u32) -> Height {
        Height {
            ball: elementary::ln_bigint(m, prec).div_i64(root as i64),
            log_of: Some(BigRational::from_integer(m.clone())),
            root,
        }
    }

    fn ball(ball: Ball) -> Height {
        Height {
            ball,
            log_of: None,
            root: 1,
        }
    }
}

fn classify(h: &Height, cap: &HeightCap, prec: u32) -> Verdict {
    if let Some(a) = &h.log_of {
        match cap {
            HeightCap::LogOf(q) => {
                let qk = num_traits::pow(q.clone(), h.root as usize);
                return if a <= &qk { Verdict::Below } else { Verdict::Above };
            }
            HeightCap::Value(v) if a.is_one() => {
                return if !v.is_negative() { Verdict::Below } else { Verdict::Above }
            }
            // log a is transcendental for rational a != 1, so refinement terminates
            HeightCap::Value(_) => {
                let mut p = prec;
                while p <= 1 << 14 {
                    let x = elementary::ln_rational(a, p).div_i64(h.root as i64);
                    let c = cap.to_ball(p);
                    if x.certainly_le(&c) {
                        return Verdict::Below;
                    }
                    if c.certainly_lt(&x) {
                        return Verdict::Above;
                    }
                    p *= 2;
                }
                return Verdict::Undecided;
            }
        }
    }
    let c = cap.to_ball(prec);
    if h.ball.certainly_le(&c) {
        Verdict::Below
    } else if c.certainly_lt(&h.ball) {
        Verdict::Above
    } else {
        Verdict::Undecided
    }
}

struct Tally {
    witnesses: Vec<(f64, String, Witness)>,
    examined: usize,
    undecided: usize,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            witnesses: vec![],
            examined: 0,
            undecided: 0,
        }
    }

    fn offer(&mut self, object: Value, degree: u32, h: &Height, cap: &HeightCap, prec: u32) {
        self.examined += 1;
        match classify(h, cap, prec) {
            Verdict::Below => {
                let key = object.to_string();
                self.witnesses.push((
                    h.ball.mid_f64(),
                    key,
                    Witness {
                        object,
                        degree,
                        height: render(&h.ball),
                    },
                ));
            }
            Verdict::Above => {}
            Verdict::Undecided => self.undecided += 1,
        }
    }
}

pub fn run_finiteness_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.degree_cap == 0 {
        return Err(Error::domain("degree cap must be at least 1"));
    }
    if cfg.cutoff.is_negative() {
        return Err(Error::domain("cutoff must be non-negative"));
    }
    if cfg.buckets == 0 {
        return Err(Error::domain("need at least one bucket"));
    }
    let prec = cfg.precision_bits.max(64);
    let cap = &cfg.cutoff;
    let mut tally = Tally::new();
    let mut notes = vec![];
    let (soundness, height) = match (&cfg.base, &cfg.target) {
        (BaseField::Rational, Target::Points { n: 1 }) => {
            projective_line_points(cfg.degree_cap, cap, prec, &mut tally)?;
            (Soundness::Complete, HeightUsed::Toric)
        }
        (BaseField::Rational, Target::Points { n }) => {
            if cfg.degree_cap > 1 {
                return Err(Error::domain("points of degree > 1 are only enumerated in P^1"));
            }
            for x in integer_points(*n, cap_bound(cap)?)? {
                let h = Height::log_int(&max_abs(&x), prec);
                tally.offer(int_point_json(&x), 1, &h, cap, prec);
            }
            (Soundness::Complete, HeightUsed::Toric)
        }
        (BaseField::Rational, Target::ZeroCycles { n }) => {
            let complete = zero_cycles(*n, cfg.degree_cap, cap, prec, &mut tally)?;
            if !complete {
                notes.push("only cycles supported on rational points were assembled".into());
            }
            (
                if complete { Soundness::Complete } else { Soundness::SoundSample },
                HeightUsed::Toric,
            )
        }
        (BaseField::Rational, Target::PlaneDivisors) => {
            plane_divisors(cfg.degree_cap, cap, prec, &mut tally)?;
            (Soundness::Complete, HeightUsed::Coefficient)
        }
        (BaseField::Rational, Target::Dynamics { map }) => {
            if cfg.degree_cap > 1 {
                return Err(Error::domain("dynamical census is over rational points only"));
            }
            let f = make_selfmap(forms_from_json(map)?)?;
            let certified = dynamics_points(&f, cap, prec, &mut tally, &mut notes)?;
            (
                if certified { Soundness::Complete } else { Soundness::SoundSample },
                HeightUsed::Canonical,
            )
        }
        (BaseField::Tower { t, count, k }, Target::Points { n: 1 }) => {
            let spec = build_tower(*t, *count)?;
            let sample = tower_field_elements(&spec, *k, cfg.degree_cap, cap)?;
            tally.offer(json!(["1", "0"]), 1, &Height::log_int(&BigInt::one(), prec), cap, prec);
            for x in sample.elements {
                let h = algebraic_height(&x, prec)?;
                tally.offer(algebraic_point_json(&x), x.degree() as u32, &h, cap, prec);
            }
            notes.push(format!("tower elements from a {}", sample.label));
            (Soundness::SoundSample, HeightUsed::Toric)
        }
        (BaseField::Tower { .. }, _) => {
            return Err(Error::domain("tower base fields support points in P^1 only"))
        }
    };
    let mut ws = tally.witnesses;
    ws.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let total = ws.len();
    let buckets = bucketize(ws.iter().map(|w| w.0), cap, cfg.buckets);
    let witnesses_truncated = total > cfg.max_witnesses;
    let witnesses = ws.into_iter().take(cfg.max_witnesses).map(|w| w.2).collect();
    let cutoff_below_threshold = match &cfg.threshold {
        Some(src) => {
            let t = src.threshold.to_ball(prec)?;
            let c = cap.to_ball(prec);
            if c.certainly_lt(&t) {
                Some(true)
            } else if t.certainly_le(&c) {
                Some(false)
            } else {
                None
            }
        }
        None => None,
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        soundness,
        height,
        total,
        candidates_examined: tally.examined,
        undecided: tally.undecided,
        buckets,
        witnesses,
        witnesses_truncated,
        cutoff_below_threshold,
        notes,
    })
}

fn bucketize(hs: impl Iterator<Item = f64>, cap: &HeightCap, nb: usize) -> Vec<Bucket> {
    let top = cap.to_f64();
    if top <= 0.0 {
        let count = hs.count();
        return vec![Bucket {
            lower: 0.0,
            upper: 0.0,
            count,
        }];
    }
    let w = top / nb as f64;
    let mut out: Vec<Bucket> = (0..nb)
        .map(|i| Bucket {
            lower: w * i as f64,
            upper: if i + 1 == nb { top } else { w * (i + 1) as f64 },
            count: 0,
        })
        .collect();
    for h in hs {
        let i = ((h / w).floor().max(0.0) as usize).min(nb - 1);
        out[i].count += 1;
    }
    out
}

/// Largest integer `m` with `log m <= cap`, up to rounding at the boundary.
fn cap_bound(cap: &HeightCap) -> Result<u64> {
    let e = elementary::exp(&cap.to_ball(64));
    let b = e.upper().floor().to_i64().unwrap_or(i64::MAX);
    if b > 1 << 20 {
        return Err(Error::domain("cutoff too large for exhaustive enumeration"));
    }
    Ok(b.max(1) as u64)
}

fn max_abs(x: &[BigInt]) -> BigInt {
    x.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn int_point_json(x: &[BigInt]) -> Value {
    json!(x.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn algebraic_point_json(x: &AlgebraicNumber) -> Value {
    match x.to_rational() {
        Some(q) => json!([q.to_string(), "1"]),
        None => json!([serde_json::to_value(x).expect("serializable"), "1"]),
    }
}

/// Primitive integer vectors in `Z^(n+1)` with entries in `[-b, b]` and
/// first nonzero entry positive: one per rational point of `P^n`.
fn integer_points(n: u32, b: u64) -> Result<Vec<Vec<BigInt>>> {
    let m = n as usize + 1;
    let side = 2 * b + 1;
    let count = (side as f64).powi(m as i32);
    if count > MAX_CANDIDATES as f64 {
        return Err(Error::resource(format!(
            "about {count:.2e} integer tuples exceeds the cap {MAX_CANDIDATES}"
        )));
    }
    let b = b as i64;
    let mut out = vec![];
    let mut cur = vec![-b; m];
    loop {
        let first = cur.iter().find(|c| **c != 0);
        if matches!(first, Some(c) if *c > 0) && cur.iter().fold(0i64, |g, c| g.gcd(c)) == 1 {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
        }
        let mut j = 0;
        while j < m {
            if cur[j] < b {
                cur[j] += 1;
                break;
            }
            cur[j] = -b;
            j += 1;
        }
        if j == m {
            break;
        }
    }
    Ok(out)
}

fn algebraic_height(x: &AlgebraicNumber, prec: u32) -> Result<Height> {
    if let Some(q) = x.to_rational() {
        return Ok(Height::log_int(&q.numer().abs().max(q.denom().clone()), prec));
    }
    if let Some(m) = exact_mahler(x.minpoly())? {
        return Ok(Height::log_root(&m, x.degree() as u32, prec));
    }
    Ok(Height::ball(weil_height(x, prec)?))
}

/// `M(f)` when it is an integer we can certify: cyclotomic `f`, all roots
/// strictly on one side of the unit circle, or a quadratic with complex roots.
fn exact_mahler(f: &IntPolynomial) -> Result<Option<BigInt>> {
    if is_cyclotomic(f) {
        return Ok(Some(BigInt::one()));
    }
    let (lc, c0) = (f.lc().abs(), f.coeff(0).abs());
    if f.deg() == 2 {
        let b = f.coeff(1);
        if &b * &b < BigInt::from(4) * f.lc() * f.coeff(0) {
            return Ok(Some(lc.max(c0)));
        }
    }
    let one = Ball::one(64);
    let moduli: Vec<Ball> = isolate_roots(f, 64)?.iter().map(|r| r.abs()).collect();
    if moduli.iter().all(|m| m.certainly_lt(&one)) {
        return Ok(Some(lc));
    }
    if moduli.iter().all(|m| one.certainly_lt(m)) {
        return Ok(Some(c0));
    }
    Ok(None)
}

/// Height zero exactly: `f` divides `x^m - 1`, where `phi(m) = deg f`
/// forces `m <= 2 deg(f)^2`.
fn is_cyclotomic(f: &IntPolynomial) -> bool {
    let k = f.deg();
    if k == 0 || !f.lc().abs().is_one() || !f.coeff(0).abs().is_one() {
        return false;
    }
    (1..=2 * k * k).any(|m| {
        let g = IntPolynomial::monomial(BigInt::one(), m).sub(&IntPolynomial::one());
        g.pseudo_rem(f).is_zero()
    })
}

/// Points of `P^1` of degree `<= d`: `(x : 1)` for algebraic `x`, plus `(1 : 0)`.
fn projective_line_points(d: u32, cap: &HeightCap, prec: u32, tally: &mut Tally) -> Result<()> {
    tally.offer(json!(["1", "0"]), 1, &Height::log_int(&BigInt::one(), prec), cap, prec);
    for x in enumerate_bounded(d, cap)? {
        let x = x?;
        let h = algebraic_height(&x, prec)?;
        tally.offer(algebraic_point_json(&x), x.degree() as u32, &h, cap, prec);
    }
    Ok(())
}

/// An irreducible zero-cycle over `Q`: a Galois orbit with its degree and
/// additive height `deg * h`.
struct Orbit {
    json: Value,
    degree: u32,
    height: Ball,
    /// Set when the additive height is `log` of this integer.
    log_of: Option<BigInt>,
}

fn orbits(n: u32, d: u32, cap: &HeightCap, prec: u32) -> Result<(Vec<Orbit>, bool)> {
    if n == 1 {
        let mut out = vec![Orbit {
            json: json!({"point": ["1", "0"]}),
            degree: 1,
            height: Ball::zero(prec),
            log_of: Some(BigInt::one()),
        }];
        let mut seen = std::collections::BTreeSet::new();
        for x in enumerate_bounded(d, cap)? {
            let x = x?;
            let f: &IntPolynomial = x.minpoly();
            if !seen.insert(f.to_string_vec()) {
                continue;
            }
            let k = x.degree() as u32;
            let (height, log_of) = match x.to_rational() {
                Some(q) => {
                    let m = q.numer().abs().max(q.denom().clone());
                    (elementary::ln_bigint(&m, prec), Some(m))
                }
                None => match exact_mahler(f)? {
                    Some(m) => (elementary::ln_bigint(&m, prec), Some(m)),
                    None => (weil_height(&x, prec)?.mul_i64(k as i64), None),
                },
            };
            let json = if k == 1 {
                json!({"point": [x.to_rational().unwrap().to_string(), "1"]})
            } else {
                json!({"minpoly": f})
            };
            out.push(Orbit {
                json,
                degree: k,
                height,
                log_of,
            });
        }
        return Ok((out, true));
    }
    let pts = integer_points(n, cap_bound(cap)?)?;
    let out = pts
        .into_iter()
        .map(|x| {
            let m = max_abs(&x);
            Orbit {
                json: json!({"point": int_point_json(&x)}),
                degree: 1,
                height: elementary::ln_bigint(&m, prec),
                log_of: Some(m),
            }
        })
        .collect();
    Ok((out, false))
}

/// Effective zero-cycles of degree `<= d`. Heights are non-negative, so
/// every component of a cycle below the cutoff is itself below it.
fn zero_cycles(n: u32, d: u32, cap: &HeightCap, prec: u32, tally: &mut Tally) -> Result<bool> {
    let (orbs, complete) = orbits(n, d, cap, prec)?;
    let cap_ball = cap.to_ball(prec);
    let mut stack: Vec<(usize, u32)> = vec![];
    fn walk(
        orbs: &[Orbit],
        start: usize,
        left: u32,
        stack: &mut Vec<(usize, u32)>,
        cap_ball: &Ball,
        emit: &mut dyn FnMut(&[(usize, u32)]) -> Result<()>,
    ) -> Result<()> {
        for i in start..orbs.len() {
            let o = &orbs[i];
            if o.degree > left {
                continue;
            }
            if cap_ball.certainly_lt(&o.height) {
                continue;
            }
            let mut m = 1;
            while m * o.degree <= left {
                stack.push((i, m));
                emit(stack)?;
                walk(orbs, i + 1, left - m * o.degree, stack, cap_ball, emit)?;
                stack.pop();
                m += 1;
            }
        }
        Ok(())
    }
    let mut produced = 0usize;
    let mut emit = |cyc: &[(usize, u32)]| -> Result<()> {
        produced += 1;
        if produced > MAX_CYCLES {
            return Err(Error::resource(format!("more than {MAX_CYCLES} cycles")));
        }
        let mut ball = Ball::zero(prec);
        let mut exact = Some(BigInt::one());
        let mut degree = 0;
        let mut comps = vec![];
        for &(i, m) in cyc {
            let o = &orbs[i];
            ball = ball.add_ball(&o.height.mul_i64(m as i64));
            exact = match (exact, &o.log_of) {
                (Some(a), Some(b)) => Some(a * num_traits::pow(b.clone(), m as usize)),
                _ => None,
            };
            degree += m * o.degree;
            comps.push(json!({"mult": m, "component": o.json}));
        }
        let h = Height {
            ball,
            log_of: exact.map(BigRational::from_integer),
            root: 1,
        };
        tally.offer(json!({"n": n, "components": comps}), degree, &h, cap, prec);
        Ok(())
    };
    walk(&orbs, 0, d, &mut stack, &cap_ball, &mut emit)?;
    Ok(complete)
}

/// Primitive ternary forms of degree `1..=d`, up to sign.
fn plane_divisors(d: u32, cap: &HeightCap, prec: u32, tally: &mut Tally) -> Result<()> {
    let b = cap_bound(cap)?;
    for deg in 1..=d {
        let monos = crate::dynamics::monomials(3, deg);
        let pts = integer_points(monos.len() as u32 - 1, b)?;
        for c in pts {
            let h = Height::log_int(&max_abs(&c), prec);
            let terms: Vec<Value> = monos
                .iter()
                .zip(&c)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| json!({"exp": e, "c": c.to_string()}))
                .collect();
            tally.offer(json!({"degree": deg, "terms": terms}), deg, &h, cap, prec);
        }
    }
    Ok(())
}

/// Returns whether the search radius comes from a certified gap bound.
fn dynamics_points(
    f: &ProjectiveSelfMap,
    cap: &HeightCap,
    prec: u32,
    tally: &mut Tally,
    notes: &mut Vec<String>,
) -> Result<bool> {
    let gap = height_gap_bound(f, prec)?;
    // |h - hhat| <= R / (D - 1)
    let slack = gap.r.div_i64(f.degree() as i64 - 1);
    let search = HeightCap::Value(
        cap.to_ball(prec)
            .add_ball(&slack)
            .upper()
            .to_rational(),
    );
    if !gap.certified {
        notes.push("search radius uses an uncertified gap estimate".into());
    }
    let pts = integer_points(f.n() as u32, cap_bound(&search)?)?;
    for x in pts {
        let p = ProjectiveTuple::from_rationals(
            &x.iter().map(|c| BigRational::from_integer(c.clone())).collect::<Vec<_>>(),
        )?;
        let h = match preperiodic_test(f, &p, PREPERIODIC_BUDGET)? {
            Preperiodicity::Preperiodic { .. } => Height::log_int(&BigInt::one(), prec),
            Preperiodicity::NotPreperiodic { .. } | Preperiodicity::Inconclusive { .. } => {
                let r = canonical_height(f, &p, 1e-12, prec)?;
                Height::ball(r.value)
            }
        };
        tally.offer(int_point_json(&x), 1, &h, cap, prec);
    }
    Ok(gap.certified)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(cfg: &ExperimentConfig) -> usize {
        run_finiteness_experiment(cfg).unwrap().total
    }

    #[test]
    fn line_census() {
        let r = run_finiteness_experiment(&ExperimentConfig::rational_points(1, 1, HeightCap::log(2))).unwrap();
        assert_eq!(r.total, 8);
        assert_eq!(r.soundness, Soundness::Complete);
        assert_eq!(r.buckets.iter().map(|b| b.count).sum::<usize>(), 8);
        assert_eq!(count(&ExperimentConfig::rational_points(1, 1, HeightCap::value(BigRational::zero()))), 4);
        assert_eq!(count(&ExperimentConfig::rational_points(2, 1, HeightCap::value(BigRational::zero()))), 13);
    }

    #[test]
    fn cycles_and_divisors() {
        let mut cfg = ExperimentConfig::rational_points(1, 1, HeightCap::value(BigRational::zero()));
        cfg.target = Target::ZeroCycles { n: 1 };
        // single points of height 0
        assert_eq!(count(&cfg), 4);
        cfg.target = Target::PlaneDivisors;
        // (3^3 - 1) / 2 lines with coefficients in {0, +-1}
        assert_eq!(count(&cfg), 13);
    }
}
