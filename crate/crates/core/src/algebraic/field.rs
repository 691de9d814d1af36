//! Number fields `Q(theta)` generated by finitely many algebraic numbers,
//! with elements written as rational polynomials in a primitive element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::number::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::numeric::ComplexBall;
use crate::poly::{det_multi, MultiPoly, RatPolynomial};

/// `Q(theta)`; `theta = None` stands for `Q` itself.
#[derive(Clone, Debug)]
pub struct NumberField {
    theta: Option<AlgebraicNumber>,
    /// Monic minimal polynomial of `theta` over `Q` (`x` for `Q`).
    modulus: RatPolynomial,
}

/// Polynomial in `Y` with coefficients in a number field, lowest first.
type KPoly = Vec<RatPolynomial>;

impl NumberField {
    pub fn rationals() -> NumberField {
        NumberField {
            theta: None,
            modulus: RatPolynomial::x(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn generator(&self) -> Option<&AlgebraicNumber> {
        self.theta.as_ref()
    }

    /// A field containing every element, with each element written in the
    /// primitive element. Generators are `theta + k y` with the smallest
    /// `|k|` (positive first) that keeps `y` inside `Q(theta + k y)`.
    pub fn generated_by(elems: &[AlgebraicNumber]) -> Result<(NumberField, Vec<RatPolynomial>)> {
        let mut field = NumberField::rationals();
        let mut reps: Vec<RatPolynomial> = Vec::with_capacity(elems.len());
        for y in elems {
            if let Some(q) = y.to_rational() {
                reps.push(RatPolynomial::constant(q));
                continue;
            }
            let Some(theta) = field.theta.clone() else {
                field = NumberField::from_generator(y.clone());
                for r in reps.iter_mut() {
                    *r = field.reduce(r);
                }
                reps.push(RatPolynomial::x());
                continue;
            };
            let mut done = false;
            for k in 1..=12i64 {
                for k in [k, -k] {
                    let kq = BigRational::from_integer(k.into());
                    let t2 = theta.add(&y.mul_rational(&kq))?;
                    let f2 = NumberField::from_generator(t2);
                    if let Some(c) = f2.common_root(y, &field, k)? {
                        // theta = theta' - k y
                        let old = RatPolynomial::x().sub(&c.scale(&kq));
                        let old = f2.reduce(&old);
                        for r in reps.iter_mut() {
                            *r = f2.reduce(&r.compose(&old));
                        }
                        reps.push(c);
                        field = f2;
                        done = true;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            if !done {
                return Err(Error::resource("no primitive element found with |k| <= 12"));
            }
        }
        Ok((field, reps))
    }

    fn from_generator(theta: AlgebraicNumber) -> NumberField {
        let modulus = RatPolynomial::from_int(theta.minpoly()).monic();
        NumberField {
            theta: Some(theta),
            modulus,
        }
    }

    pub fn reduce(&self, a: &RatPolynomial) -> RatPolynomial {
        if self.theta.is_none() {
            return RatPolynomial::constant(a.coeff(0));
        }
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &RatPolynomial) -> Result<RatPolynomial> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = a.xgcd(&self.modulus);
        if g.deg() != 0 {
            return Err(Error::domain("non-invertible element: modulus not irreducible"));
        }
        Ok(self.reduce(&s))
    }

    /// If `Y - c` is the gcd over this field of `minpoly_y(Y)` and
    /// `minpoly_theta_old(theta - k Y)`, returns `c` (so `y = c`).
    fn common_root(
        &self,
        y: &AlgebraicNumber,
        old: &NumberField,
        k: i64,
    ) -> Result<Option<RatPolynomial>> {
        let gy: KPoly = y
            .minpoly()
            .coeffs()
            .iter()
            .map(|c| RatPolynomial::constant(BigRational::from_integer(c.clone())))
            .collect();
        // theta - k Y as a K-polynomial in Y
        let lin: KPoly = vec![
            self.reduce(&RatPolynomial::x()),
            RatPolynomial::constant(BigRational::from_integer((-k).into())),
        ];
        let mut h: KPoly = vec![];
        for c in old.modulus.coeffs().iter().rev() {
            h = self.kpoly_mul(&h, &lin);
            h = self.kpoly_add(&h, &vec![RatPolynomial::constant(c.clone())]);
        }
        let g = self.kpoly_gcd(gy, h)?;
        if g.len() != 2 {
            return Ok(None);
        }
        // monic: Y + g0
        Ok(Some(g[0].neg()))
    }

    fn kpoly_trim(mut a: KPoly) -> KPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    fn kpoly_add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.len().max(b.len());
        let z = RatPolynomial::zero();
        NumberField::kpoly_trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    fn kpoly_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut v = vec![RatPolynomial::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = v[i + j].add(&x.mul(y));
            }
        }
        NumberField::kpoly_trim(v.iter().map(|c| self.reduce(c)).collect())
    }

    /// Monic gcd in `K[Y]`.
    fn kpoly_gcd(&self, a: KPoly, b: KPoly) -> Result<KPoly> {
        let (mut a, mut b) = (
            NumberField::kpoly_trim(a.iter().map(|c| self.reduce(c)).collect()),
            NumberField::kpoly_trim(b.iter().map(|c| self.reduce(c)).collect()),
        );
        while !b.is_empty() {
            let r = self.kpoly_rem(&a, &b)?;
            a = b;
            b = r;
        }
        let inv = self.inv(a.last().expect("gcd of nonzero polynomials"))?;
        Ok(a.iter().map(|c| self.mul(c, &inv)).collect())
    }

    fn kpoly_rem(&self, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        let mut r = a.clone();
        let inv = self.inv(b.last().unwrap())?;
        while r.len() >= b.len() && !r.is_empty() {
            let c = self.mul(r.last().unwrap(), &inv);
            let shift = r.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = self.reduce(&r[shift + j].sub(&c.mul(bj)));
            }
            r = NumberField::kpoly_trim(r);
        }
        Ok(r)
    }

    /// Boxes around `theta` under every complex embedding, in selector order.
    pub fn embeddings(&self, bits: u32) -> Result<Vec<ComplexBall>> {
        match &self.theta {
            None => Ok(vec![ComplexBall::zero(bits + 16)]),
            Some(t) => Ok(t
                .conjugates(bits)?
                .into_iter()
                .map(|z| z.set_prec(bits + 16))
                .collect()),
        }
    }

    /// `sigma(a)` for the embedding sending `theta` to `z`.
    pub fn evaluate(a: &RatPolynomial, z: &ComplexBall) -> ComplexBall {
        let p = z.prec();
        let mut acc = ComplexBall::zero(p);
        for c in a.coeffs().iter().rev() {
            acc = acc.mul(z).add(&ComplexBall::from_rational(c, p));
        }
        acc
    }

    /// Matrix of multiplication by `a` in the basis `1, theta, ...`.
    pub fn mul_matrix(&self, a: &RatPolynomial) -> Vec<Vec<BigRational>> {
        let d = self.degree();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        let mut col = self.reduce(a);
        for j in 0..d {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = self.mul(&col, &RatPolynomial::x());
        }
        m
    }

    /// `N(sum_i u_i y_i)` as `(P, s)` with `N = P / s`, `P` integral.
    pub fn norm_form(&self, ys: &[RatPolynomial]) -> (MultiPoly, BigInt) {
        let d = self.degree();
        let mats: Vec<Vec<Vec<BigRational>>> = ys.iter().map(|y| self.mul_matrix(y)).collect();
        let mut l = BigInt::one();
        for m in &mats {
            for row in m {
                for c in row {
                    l = l.lcm(c.denom());
                }
            }
        }
        let lq = BigRational::from_integer(l.clone());
        let entries: Vec<Vec<MultiPoly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let cs: Vec<BigInt> =
                            mats.iter().map(|m| (&m[i][j] * &lq).to_integer()).collect();
                        MultiPoly::linear(&cs)
                    })
                    .collect()
            })
            .collect();
        (det_multi(&entries), l.pow(d as u32))
    }
}
