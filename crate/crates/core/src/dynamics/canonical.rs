use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{height_gap_bound, normalize, ProjectiveSelfMap};
use crate::algebraic::NumberField;
use crate::error::{Error, Result};
use crate::heights::{field_tuple_height, ProjectiveTuple};
use crate::numeric::{elementary, Ball};
use crate::poly::{MultiPoly, RatPolynomial};

pub const MAX_ITERATIONS: u32 = 64;
/// Iterates of points with irrational coordinates are computed exactly up
/// to this depth.
pub const MAX_SYMBOLIC_DEPTH: u32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalHeightResult {
    pub value: Ball,
    pub iterations_used: u32,
    #[serde(rename = "gap_bound_R")]
    pub gap_bound_r: Ball,
    /// `R / ((D - 1) D^iterations_used)`, included in the radius of `value`.
    pub tail_bound: Ball,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Preperiodicity {
    Preperiodic { preperiod: usize, period: usize },
    NotPreperiodic { lower_bound: Ball },
    Inconclusive { steps: usize },
}

fn tail(r: &Ball, d: u32, k: u32) -> Ball {
    let den = BigInt::from(d - 1) * num_traits::pow(BigInt::from(d), k as usize);
    r.div_ball(&Ball::from_bigint(&den, r.prec()))
}

fn eval_ball(f: &MultiPoly, y: &[Ball], prec: u32) -> Ball {
    let mut acc = Ball::zero(prec);
    for (e, c) in f.terms() {
        let mut t = Ball::from_bigint(c, prec);
        for (yi, &ei) in y.iter().zip(e) {
            if ei > 0 {
                t = t.mul_ball(&yi.pow_u64(ei as u64));
            }
        }
        acc = acc.add_ball(&t);
    }
    acc
}

fn rational_coords(p: &ProjectiveTuple) -> Option<Vec<BigInt>> {
    p.as_coprime_integers().map(normalize)
}

/// `lim h(f^k P) / D^k`, enclosed with radius at most `tol` plus rounding.
pub fn canonical_height(
    f: &ProjectiveSelfMap,
    p: &ProjectiveTuple,
    tol: f64,
    prec: u32,
) -> Result<CanonicalHeightResult> {
    if p.dim() != f.n() {
        return Err(Error::domain("point and map live in different dimensions"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let d = f.degree();
    let r = height_gap_bound(f, prec)?.r;
    let half = Ball::from_f64(tol / 2.0, prec);
    let k = (0..=MAX_ITERATIONS)
        .find(|&k| tail(&r, d, k).certainly_le(&half) || r.is_exact() && r.mid_is_zero())
        .ok_or_else(|| {
            Error::resource(format!("tolerance {tol:e} needs more than {MAX_ITERATIONS} iterations"))
        })?;
    let t = tail(&r, d, k);
    let value = match rational_coords(p) {
        Some(x) => rational_route(f, &x, k, tol, prec)?,
        None => {
            if k > MAX_SYMBOLIC_DEPTH {
                return Err(Error::resource(format!(
                    "tolerance {tol:e} needs {k} iterations; irrational points iterate to depth {MAX_SYMBOLIC_DEPTH}"
                )));
            }
            let (field, reps) = NumberField::generated_by(p.coords())?;
            let it = iterate_in_field(f, &field, reps, k);
            let h = field_tuple_height(&field, &it, false, prec + 16)?;
            h.div_ball(&Ball::from_bigint(&num_traits::pow(BigInt::from(d), k as usize), prec + 16))
        }
    };
    Ok(CanonicalHeightResult {
        value: value.with_radius(t.mag_upper()).set_prec(prec),
        iterations_used: k,
        gap_bound_r: r,
        tail_bound: t,
    })
}

pub(crate) fn iterate_in_field(
    f: &ProjectiveSelfMap,
    field: &NumberField,
    mut reps: Vec<RatPolynomial>,
    k: u32,
) -> Vec<RatPolynomial> {
    for _ in 0..k {
        reps = f
            .forms()
            .iter()
            .map(|g| {
                let mut acc = RatPolynomial::zero();
                for (e, c) in g.terms() {
                    let mut t = RatPolynomial::constant(c.clone().into());
                    for (r, &ei) in reps.iter().zip(e) {
                        for _ in 0..ei {
                            t = field.mul(&t, r);
                        }
                    }
                    acc = acc.add(&t);
                }
                acc
            })
            .collect();
    }
    reps
}

/// `h(P_0) + sum_k D^-(k+1) (log ||F(y_k)|| - log g_k)`: the archimedean
/// factor runs on the max-normalized real direction `y_k`, and `g_k`, the
/// gcd lost at step `k`, divides the certificate constant `L`, so it is
/// found from residues modulo `L^(K+1)`.
fn rational_route(f: &ProjectiveSelfMap, x0: &[BigInt], k: u32, tol: f64, prec: u32) -> Result<Ball> {
    let d = f.degree();
    let l = f
        .certificate()
        .map(|c| c.l.abs())
        .ok_or_else(|| Error::domain("canonical heights need a checked map"))?;
    let mut gs = Vec::with_capacity(k as usize);
    if l.is_one() {
        gs.resize(k as usize, BigInt::one());
    } else {
        let mut m = num_traits::pow(l.clone(), k as usize + 1);
        let mut xs: Vec<BigInt> = x0.iter().map(|x| x.mod_floor(&m)).collect();
        for _ in 0..k {
            let rs: Vec<BigInt> = f.forms().iter().map(|g| g.eval(&xs).mod_floor(&m)).collect();
            let g = rs.iter().fold(l.clone(), |g, r| g.gcd(r));
            m = &m / &g;
            xs = rs.iter().map(|r| (r / &g).mod_floor(&m)).collect();
            gs.push(g);
        }
    }
    let top = x0.iter().map(|x| x.abs()).max().unwrap();
    let mut wp = prec + 64;
    loop {
        let mut y: Vec<Ball> = x0
            .iter()
            .map(|x| Ball::from_rational(&num_rational::BigRational::new(x.clone(), top.clone()), wp))
            .collect();
        let mut acc = elementary::ln_bigint(&top, wp);
        let mut scale = Ball::one(wp);
        let dd = Ball::from_i64(d as i64, wp);
        for g in &gs {
            let z: Vec<Ball> = f.forms().iter().map(|h| eval_ball(h, &y, wp)).collect();
            let s = z.iter().fold(Ball::zero(wp), |m, zi| m.max_ball(&zi.abs()));
            scale = scale.div_ball(&dd);
            let term = elementary::ln(&s).sub_ball(&elementary::ln_bigint(g, wp));
            acc = acc.add_ball(&term.mul_ball(&scale));
            y = z.iter().map(|zi| zi.div_ball(&s)).collect();
        }
        if acc.is_finite() && acc.rad_f64() <= tol / 2.0 {
            return Ok(acc);
        }
        if wp > 1 << 15 {
            return Err(Error::resource("canonical height: numerical radius did not shrink"));
        }
        wp *= 2;
    }
}

/// Orbit test on coprime integer tuples; any iterate with
/// `h(P_k) > R / (D - 1)` proves `h^(P) >= (h(P_k) - R/(D-1)) / D^k > 0`.
pub fn preperiodic_test(f: &ProjectiveSelfMap, p: &ProjectiveTuple, budget: usize) -> Result<Preperiodicity> {
    if p.dim() != f.n() {
        return Err(Error::domain("point and map live in different dimensions"));
    }
    let prec = 64;
    let d = f.degree();
    let r = height_gap_bound(f, prec)?.r;
    let thr = tail(&r, d, 0);
    let lower = |h: Ball, k: usize| {
        let dk = Ball::from_bigint(&num_traits::pow(BigInt::from(d), k), prec);
        h.sub_ball(&thr).div_ball(&dk)
    };
    match rational_coords(p) {
        Some(mut x) => {
            let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
            for k in 0..=budget {
                if let Some(&i) = seen.get(&x) {
                    return Ok(Preperiodicity::Preperiodic { preperiod: i, period: k - i });
                }
                let h = elementary::ln_bigint(&x.iter().map(|c| c.abs()).max().unwrap(), prec);
                if thr.certainly_lt(&h) {
                    return Ok(Preperiodicity::NotPreperiodic { lower_bound: lower(h, k) });
                }
                seen.insert(x.clone(), k);
                x = f.apply_integers(&x);
            }
            Ok(Preperiodicity::Inconclusive { steps: budget })
        }
        None => {
            let (field, reps) = NumberField::generated_by(p.coords())?;
            let depth = budget.min(MAX_SYMBOLIC_DEPTH as usize);
            for k in 0..=depth {
                let it = iterate_in_field(f, &field, reps.clone(), k as u32);
                let h = field_tuple_height(&field, &it, false, prec)?;
                if thr.certainly_lt(&h) {
                    return Ok(Preperiodicity::NotPreperiodic { lower_bound: lower(h, k) });
                }
            }
            Ok(Preperiodicity::Inconclusive { steps: depth })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicNumber;
    use crate::dynamics::{lattes_duplication, make_selfmap};
    use num_rational::BigRational;
    use num_traits::Zero;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    fn sq() -> ProjectiveSelfMap {
        make_selfmap(vec![x(0).pow(2), x(1).pow(2)]).unwrap()
    }

    fn pt(v: &[i64]) -> ProjectiveTuple {
        ProjectiveTuple::from_integers(v).unwrap()
    }

    #[test]
    fn power_map_is_exact() {
        let r = canonical_height(&sq(), &pt(&[2, 1]), 1e-8, 64).unwrap();
        assert_eq!(r.iterations_used, 0);
        assert!((r.value.mid_f64() - 2f64.ln()).abs() < 1e-15);
        let zeta = AlgebraicNumber::root_of(&crate::poly::IntPolynomial::from_i64s(&[1, 1, 1, 1, 1]), 0).unwrap();
        let p = ProjectiveTuple::new(vec![zeta, AlgebraicNumber::one()]).unwrap();
        let r = canonical_height(&sq(), &p, 1e-8, 64).unwrap();
        assert!(r.value.mid_f64().abs() < 1e-15);
    }

    #[test]
    fn lattes_torsion() {
        let l = lattes_duplication(&BigRational::from_integer((-1).into()), &BigRational::zero()).unwrap();
        let r = canonical_height(&l, &pt(&[0, 1]), 1e-8, 64).unwrap();
        assert!(r.value.mid_f64().abs() < 1e-8, "{:?}", r.value.mid_f64());
        assert!(r.value.rad_f64() <= 1e-8 + 1e-12);
        for p in [[1, 1], [-1, 1], [0, 1], [1, 0]] {
            assert!(matches!(
                preperiodic_test(&l, &pt(&p), 10).unwrap(),
                Preperiodicity::Preperiodic { .. }
            ));
        }
    }

    #[test]
    fn functional_equation() {
        let l = lattes_duplication(&BigRational::from_integer((-2).into()), &BigRational::from_integer(1.into())).unwrap();
        let p = pt(&[3, 2]);
        let fp = ProjectiveTuple::from_integers(
            &l.apply_integers(&[3.into(), 2.into()]).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>(),
        )
        .unwrap();
        let a = canonical_height(&l, &p, 1e-6, 64).unwrap();
        let b = canonical_height(&l, &fp, 1e-6, 64).unwrap();
        let diff = b.value.sub_ball(&a.value.mul_i64(4));
        assert!(diff.contains_float(&crate::numeric::Float::zero()), "{}", diff.mid_f64());
        assert!(a.value.mid_f64() > 0.0);
    }

    #[test]
    fn preperiodic_examples() {
        assert_eq!(
            preperiodic_test(&sq(), &pt(&[1, 1]), 10).unwrap(),
            Preperiodicity::Preperiodic { preperiod: 0, period: 1 }
        );
        match preperiodic_test(&sq(), &pt(&[2, 1]), 10).unwrap() {
            Preperiodicity::NotPreperiodic { lower_bound } => {
                assert!((lower_bound.mid_f64() - 2f64.ln()).abs() < 1e-15)
            }
            other => panic!("{other:?}"),
        }
        let g = make_selfmap(vec![x(0).pow(2).sub(&x(1).pow(2)), x(1).pow(2)]).unwrap();
        assert_eq!(
            preperiodic_test(&g, &pt(&[0, 1]), 10).unwrap(),
            Preperiodicity::Preperiodic { preperiod: 0, period: 2 }
        );
    }
}
