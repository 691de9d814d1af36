//! Weil height, house, projective and l2 heights, weighted heights.

pub mod mahler;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::{AlgebraicNumber, NumberField};
use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball, Float, Mag};

pub use mahler::{
    dirichlet_l2_chi3, l2_chi3_partial, log_mahler_measure, mahler_measure, mahler_measure_2var,
    QuadratureEstimate,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "gamma")]
pub enum HeightKind {
    Weil,
    House,
    L2,
    Weighted(f64),
}

/// Point of projective space with algebraic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<AlgebraicNumber>", into = "Vec<AlgebraicNumber>")]
pub struct ProjectiveTuple {
    coords: Vec<AlgebraicNumber>,
}

impl TryFrom<Vec<AlgebraicNumber>> for ProjectiveTuple {
    type Error = Error;
    fn try_from(v: Vec<AlgebraicNumber>) -> Result<Self> {
        ProjectiveTuple::new(v)
    }
}

impl From<ProjectiveTuple> for Vec<AlgebraicNumber> {
    fn from(p: ProjectiveTuple) -> Self {
        p.coords
    }
}

impl ProjectiveTuple {
    pub fn new(coords: Vec<AlgebraicNumber>) -> Result<ProjectiveTuple> {
        if coords.is_empty() || coords.iter().all(|c| c.is_zero()) {
            return Err(Error::domain("projective tuple needs a nonzero coordinate"));
        }
        Ok(ProjectiveTuple { coords })
    }

    pub fn from_integers(v: &[i64]) -> Result<ProjectiveTuple> {
        ProjectiveTuple::new(v.iter().map(|&x| AlgebraicNumber::from_integer(x)).collect())
    }

    pub fn from_rationals(v: &[BigRational]) -> Result<ProjectiveTuple> {
        ProjectiveTuple::new(v.iter().map(AlgebraicNumber::from_rational).collect())
    }

    pub fn coords(&self) -> &[AlgebraicNumber] {
        &self.coords
    }

    /// Ambient dimension `n` (length minus one).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Coprime integer coordinates when every coordinate is rational; the
    /// first nonzero coordinate is made positive.
    pub fn as_coprime_integers(&self) -> Option<Vec<BigInt>> {
        let qs: Vec<BigRational> = self.coords.iter().map(|c| c.to_rational()).collect::<Option<_>>()?;
        Some(coprime_integers(&qs))
    }

    /// Projective equality via cross-multiplication.
    pub fn projectively_equal(&self, o: &ProjectiveTuple) -> Result<bool> {
        if self.coords.len() != o.coords.len() {
            return Ok(false);
        }
        let n = self.coords.len();
        for i in 0..n {
            for j in i + 1..n {
                let a = self.coords[i].mul(&o.coords[j])?;
                let b = self.coords[j].mul(&o.coords[i])?;
                if a != b {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Scales rationals to coprime integers with the first nonzero one positive.
pub fn coprime_integers(qs: &[BigRational]) -> Vec<BigInt> {
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if neg {
            *x = -&*x;
        }
    }
    ints
}

/// `h(a) = log M(minpoly) / deg`.
pub fn weil_height(a: &AlgebraicNumber, prec: u32) -> Result<Ball> {
    if let Some(q) = a.to_rational() {
        let m = q.numer().abs().max(q.denom().abs());
        return Ok(elementary::ln_bigint(&m, prec));
    }
    let d = a.degree();
    let bits = prec + 8 + (d as u32).ilog2();
    let roots = a.conjugates(bits)?;
    let lm = mahler::log_mahler_from_roots(&a.minpoly().lc(), &roots, prec + 8);
    Ok(lm.div_i64(d as i64).set_prec(prec))
}

/// Largest modulus among the conjugates.
pub fn house(a: &AlgebraicNumber, prec: u32) -> Result<Ball> {
    if let Some(q) = a.to_rational() {
        return Ok(Ball::from_rational(&q.abs(), prec));
    }
    let roots = a.conjugates(prec + 8)?;
    let mut m = Ball::zero(prec);
    for z in &roots {
        m = m.max_ball(&z.abs().set_prec(prec));
    }
    Ok(m)
}

/// `deg(a)^gamma h(a)`.
pub fn weighted_height(a: &AlgebraicNumber, gamma: f64, prec: u32) -> Result<Ball> {
    if !gamma.is_finite() {
        return Err(Error::domain("weight exponent must be finite"));
    }
    let h = weil_height(a, prec + 8)?;
    let w = degree_power(a.degree(), gamma, prec + 8);
    Ok(h.mul_ball(&w).set_prec(prec))
}

fn degree_power(d: usize, gamma: f64, prec: u32) -> Ball {
    if gamma == 0.0 || d == 1 {
        return Ball::one(prec);
    }
    if gamma.fract() == 0.0 && gamma.abs() < 64.0 {
        let p = Ball::from_i64(d as i64, prec).pow_u64(gamma.abs() as u64);
        return if gamma > 0.0 { p } else { Ball::one(prec).div_ball(&p) };
    }
    let l = elementary::ln(&Ball::from_i64(d as i64, prec));
    elementary::exp(&l.mul_ball(&Ball::from_f64(gamma, prec)))
}

#[derive(Clone, Copy, PartialEq)]
enum Norm {
    Max,
    Euclid,
}

/// `(1/[K:Q]) sum_v [K_v:Q_v] log max_i |x_i|_v`.
pub fn projective_height(p: &ProjectiveTuple, prec: u32) -> Result<Ball> {
    tuple_height(p, Norm::Max, prec)
}

/// As [`projective_height`] with the Euclidean norm at archimedean places.
pub fn l2_height(p: &ProjectiveTuple, prec: u32) -> Result<Ball> {
    tuple_height(p, Norm::Euclid, prec)
}

fn tuple_height(p: &ProjectiveTuple, norm: Norm, prec: u32) -> Result<Ball> {
    let wp = prec + 16;
    if let Some(ints) = p.as_coprime_integers() {
        return Ok(match norm {
            Norm::Max => {
                let m = ints.iter().map(|x| x.abs()).max().unwrap();
                elementary::ln_bigint(&m, prec)
            }
            Norm::Euclid => {
                let s: BigInt = ints.iter().map(|x| x * x).sum();
                elementary::ln_bigint(&s, wp).mul_2exp(-1).set_prec(prec)
            }
        });
    }
    let (field, reps) = NumberField::generated_by(p.coords())?;
    field_tuple_height(&field, &reps, norm == Norm::Euclid, prec)
}

/// Height of a tuple given by representatives in `field`, which need not be
/// generated by the tuple.
pub(crate) fn field_tuple_height(
    field: &NumberField,
    reps: &[crate::poly::RatPolynomial],
    euclid: bool,
    prec: u32,
) -> Result<Ball> {
    let wp = prec + 16;
    let norm = if euclid { Norm::Euclid } else { Norm::Max };
    if reps.iter().all(|r| r.is_zero()) {
        return Err(Error::domain("projective tuple needs a nonzero coordinate"));
    }
    // finite places via the content of the norm of the generic linear form,
    // archimedean places via conjugate embeddings
    let d = field.degree();
    let thetas = field.embeddings(wp + 8)?;
    let mut arch = Ball::zero(wp);
    for t in &thetas {
        let vals: Vec<crate::numeric::ComplexBall> =
            reps.iter().map(|r| NumberField::evaluate(r, t)).collect();
        let term = match norm {
            Norm::Max => {
                let mut m = Ball::zero(wp);
                for v in &vals {
                    m = m.max_ball(&v.abs());
                }
                elementary::ln(&m)
            }
            Norm::Euclid => {
                let mut s = Ball::zero(wp);
                for v in &vals {
                    s = s.add_ball(&v.abs_sqr());
                }
                elementary::ln(&s).mul_2exp(-1)
            }
        };
        arch = arch.add_ball(&term);
    }
    let (nf, scale) = field.norm_form(&reps);
    let content = nf.content();
    let finite = elementary::ln_bigint(&scale, wp).sub_ball(&elementary::ln_bigint(&content, wp));
    Ok(arch.add_ball(&finite).div_i64(d as i64).set_prec(prec))
}

/// Height of a polynomial's coefficient tuple. `House` is the log of the
/// largest house among the coefficients (not a projective invariant);
/// `Weighted(g)` scales the Weil height by `[K:Q]^g` for the coefficient
/// field `K`.
pub fn poly_height(coeffs: &[AlgebraicNumber], kind: HeightKind, prec: u32) -> Result<Ball> {
    let p = ProjectiveTuple::new(coeffs.to_vec())?;
    match kind {
        HeightKind::Weil => projective_height(&p, prec),
        HeightKind::L2 => l2_height(&p, prec),
        HeightKind::House => {
            let mut m = Ball::zero(prec);
            for c in coeffs {
                m = m.max_ball(&house(c, prec)?);
            }
            Ok(elementary::ln(&m))
        }
        HeightKind::Weighted(g) => {
            let (field, _) = NumberField::generated_by(coeffs)?;
            let h = projective_height(&p, prec + 8)?;
            Ok(h.mul_ball(&degree_power(field.degree(), g, prec + 8)).set_prec(prec))
        }
    }
}

/// Weil height of an integer polynomial's coefficient tuple.
pub fn int_poly_height(f: &crate::poly::IntPolynomial, prec: u32) -> Result<Ball> {
    if f.is_zero() {
        return Err(Error::domain("height of the zero polynomial"));
    }
    Ok(elementary::ln_bigint(&(f.max_abs_coeff() / f.content()), prec))
}

/// Weil height of an integer polynomial in several variables: log of the
/// largest coefficient of its primitive part.
pub fn multipoly_height(f: &crate::poly::MultiPoly, prec: u32) -> Result<Ball> {
    if f.is_zero() {
        return Err(Error::domain("height of the zero polynomial"));
    }
    Ok(elementary::ln_bigint(&(f.max_abs_coeff() / f.content()), prec))
}

/// Value of a height kind on a single algebraic number.
pub fn height_of(a: &AlgebraicNumber, kind: HeightKind, prec: u32) -> Result<Ball> {
    match kind {
        HeightKind::Weil => weil_height(a, prec),
        HeightKind::House => house(a, prec),
        HeightKind::L2 => {
            l2_height(&ProjectiveTuple::new(vec![AlgebraicNumber::one(), a.clone()])?, prec)
        }
        HeightKind::Weighted(g) => weighted_height(a, g, prec),
    }
}

/// Exact upper bound `|x| <= 2^e` helper for callers bounding enclosures.
pub fn mag_ball(m: Mag, prec: u32) -> Ball {
    Ball::exact(Float::from_mag(m), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn close(b: &Ball, v: f64, tol: f64) -> bool {
        (b.mid_f64() - v).abs() < tol
    }

    #[test]
    fn weil_values() {
        assert!(weil_height(&AlgebraicNumber::one(), 64).unwrap().is_zero_exact());
        let h = weil_height(&AlgebraicNumber::from_rational(&q(1, 2)), 128).unwrap();
        assert!(close(&h, std::f64::consts::LN_2, 1e-15));
        let a = AlgebraicNumber::root_of(&crate::poly::IntPolynomial::from_i64s(&[5, -6, 5]), 0).unwrap();
        let h = weil_height(&a, 128).unwrap();
        assert!(close(&h, 0.5 * 5f64.ln(), 1e-15) && h.rad_f64() < 1e-25);
        let phi = AlgebraicNumber::root_of(&crate::poly::IntPolynomial::from_i64s(&[-1, -1, 1]), 1).unwrap();
        let h = weil_height(&phi, 128).unwrap();
        assert!(close(&h, 0.5 * 1.618033988749895f64.ln(), 1e-15));
    }

    #[test]
    fn house_values() {
        let c = AlgebraicNumber::nth_root(&q(2, 1), 3).unwrap();
        assert!(close(&house(&c, 80).unwrap(), 2f64.powf(1.0 / 3.0), 1e-14));
        assert!(close(&house(&AlgebraicNumber::from_integer(-3), 80).unwrap(), 3.0, 1e-15));
        let a = AlgebraicNumber::root_of(&crate::poly::IntPolynomial::from_i64s(&[5, -6, 5]), 1).unwrap();
        assert!(house(&a, 80).unwrap().contains_float(&Float::one()));
    }

    #[test]
    fn tuple_heights() {
        let p = ProjectiveTuple::from_integers(&[1, 2, 3]).unwrap();
        assert!(close(&projective_height(&p, 100).unwrap(), 3f64.ln(), 1e-15));
        assert!(close(&l2_height(&p, 100).unwrap(), 0.5 * 14f64.ln(), 1e-15));
        let p2 = ProjectiveTuple::from_integers(&[2, 4, 6]).unwrap();
        assert!(close(&projective_height(&p2, 100).unwrap(), 3f64.ln(), 1e-15));
        let p3 = ProjectiveTuple::from_integers(&[3, 4]).unwrap();
        assert!(close(&l2_height(&p3, 100).unwrap(), 5f64.ln(), 1e-15));
        assert!(ProjectiveTuple::from_integers(&[0, 0]).is_err());
    }

    #[test]
    fn algebraic_tuple() {
        let s2 = AlgebraicNumber::nth_root(&q(2, 1), 2).unwrap();
        let p = ProjectiveTuple::new(vec![AlgebraicNumber::one(), s2.clone()]).unwrap();
        let h = projective_height(&p, 100).unwrap();
        assert!(close(&h, 0.5 * 2f64.ln(), 1e-14), "{h}");
        // (2 : 2 sqrt2) is the same point
        let p2 = ProjectiveTuple::new(vec![
            AlgebraicNumber::from_integer(2),
            s2.mul_rational(&q(2, 1)),
        ])
        .unwrap();
        let h2 = projective_height(&p2, 100).unwrap();
        assert!(h.overlaps(&h2));
        // (1 : 1/sqrt2): 1/sqrt2 has height (1/2) log 2
        let p3 = ProjectiveTuple::new(vec![AlgebraicNumber::one(), s2.inv().unwrap()]).unwrap();
        assert!(close(&projective_height(&p3, 100).unwrap(), 0.5 * 2f64.ln(), 1e-14));
    }

    #[test]
    fn weighted_and_poly() {
        let s2 = AlgebraicNumber::nth_root(&q(2, 1), 2).unwrap();
        let h = weighted_height(&s2, 1.0, 100).unwrap();
        assert!(close(&h, 2f64.ln(), 1e-14));
        let h0 = weighted_height(&s2, 0.0, 100).unwrap();
        assert!(close(&h0, 0.5 * 2f64.ln(), 1e-14));
        let cs: Vec<AlgebraicNumber> = [5, -6, 5].iter().map(|&c| AlgebraicNumber::from_integer(c)).collect();
        let h = poly_height(&cs, HeightKind::Weil, 100).unwrap();
        assert!(close(&h, 6f64.ln(), 1e-14));
    }
}
