//! Morphisms of `P^n`, height gaps and canonical heights.

mod canonical;
mod certificate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{elementary, Ball};
use crate::poly::MultiPoly;
use crate::serde_util::{to_bigint, IntRepr};

pub use canonical::{
    canonical_height, preperiodic_test, CanonicalHeightResult, Preperiodicity,
};
pub use certificate::NullstellensatzCertificate;
pub(crate) use certificate::monomials;

/// Largest ambient dimension the constructor certifies.
pub const MAX_CHECKED_N: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveSelfMap {
    n: usize,
    d: u32,
    forms: Vec<MultiPoly>,
    /// `None` when built with the unchecked flag.
    cert: Option<NullstellensatzCertificate>,
}

/// Validates `forms` as a morphism of `P^n`, `n + 1 = forms.len()`.
pub fn make_selfmap(forms: Vec<MultiPoly>) -> Result<ProjectiveSelfMap> {
    build(forms, false)
}

/// As [`make_selfmap`], but skips the morphism check for `n > 2`.
pub fn make_selfmap_unchecked(forms: Vec<MultiPoly>) -> Result<ProjectiveSelfMap> {
    build(forms, true)
}

fn build(forms: Vec<MultiPoly>, unchecked: bool) -> Result<ProjectiveSelfMap> {
    let m = forms.len();
    if m < 2 {
        return Err(Error::domain("a self-map of P^n needs n + 1 >= 2 forms"));
    }
    if forms.iter().any(|f| f.nvars() != m) {
        return Err(Error::domain("each form needs n + 1 variables"));
    }
    if forms.iter().all(|f| f.is_zero()) {
        return Err(Error::NotAMorphism("all forms vanish".into()));
    }
    let mut d = None;
    for f in forms.iter().filter(|f| !f.is_zero()) {
        if !f.is_multihomogeneous(m) {
            return Err(Error::domain("forms must be homogeneous"));
        }
        let fd = f.total_degree();
        if *d.get_or_insert(fd) != fd {
            return Err(Error::domain("forms of unequal degrees"));
        }
    }
    let d = d.unwrap();
    if d < 2 {
        return Err(Error::domain("degree must be at least 2"));
    }
    let g = forms.iter().fold(BigInt::zero(), |g, f| g.gcd(&f.content()));
    let forms: Vec<MultiPoly> = forms
        .into_iter()
        .map(|f| MultiPoly::from_terms(m, f.terms().iter().map(|(e, c)| (e.clone(), c / &g))))
        .collect();
    let n = m - 1;
    let cert = if n > MAX_CHECKED_N && unchecked {
        None
    } else if n > MAX_CHECKED_N {
        return Err(Error::domain(format!(
            "morphism check is certified only for n <= {MAX_CHECKED_N}; use the unchecked constructor"
        )));
    } else {
        Some(NullstellensatzCertificate::search(&forms, d)?.ok_or_else(|| {
            Error::NotAMorphism("the forms have a common zero".into())
        })?)
    };
    Ok(ProjectiveSelfMap { n, d, forms, cert })
}

impl ProjectiveSelfMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    pub fn is_checked(&self) -> bool {
        self.cert.is_some()
    }

    pub fn certificate(&self) -> Option<&NullstellensatzCertificate> {
        self.cert.as_ref()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.forms.iter().map(|f| f.max_abs_coeff()).max().unwrap()
    }

    /// One step on a coprime integer tuple, reduced to coprime integers
    /// with the first nonzero entry positive.
    pub fn apply_integers(&self, x: &[BigInt]) -> Vec<BigInt> {
        normalize(self.forms.iter().map(|f| f.eval(x)).collect())
    }

    /// The map with `x -> y` over `Q`, homogenized as `(P(x, z), Q(x, z))`.
    pub fn from_univariate(num: &[i64], den: &[i64]) -> Result<ProjectiveSelfMap> {
        let d = num.len().max(den.len()) - 1;
        let hom = |cs: &[i64]| {
            MultiPoly::from_terms(
                2,
                cs.iter()
                    .enumerate()
                    .map(|(i, &c)| (vec![i as u32, (d - i) as u32], BigInt::from(c))),
            )
        };
        make_selfmap(vec![hom(num), hom(den)])
    }
}

pub(crate) fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let neg = v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    for x in v.iter_mut() {
        *x = &*x / &g;
        if neg {
            *x = -&*x;
        }
    }
    v
}

fn exp_key(e: &[u32]) -> String {
    e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_key(k: &str) -> Option<Vec<u32>> {
    k.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect()
}

impl Serialize for ProjectiveSelfMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let maps: Vec<BTreeMap<String, String>> = self
            .forms
            .iter()
            .map(|f| f.terms().iter().map(|(e, c)| (exp_key(e), c.to_string())).collect())
            .collect();
        maps.serialize(s)
    }
}

/// Parses the list of coefficient maps `{"2,0": "1", "0,2": 1}`.
pub fn forms_from_json(v: &serde_json::Value) -> Result<Vec<MultiPoly>> {
    let maps: Vec<BTreeMap<String, IntRepr>> =
        serde_json::from_value(v.clone()).map_err(|e| Error::parse(e.to_string()))?;
    let m = maps.len();
    maps.into_iter()
        .map(|mp| {
            let mut f = MultiPoly::zero(m);
            for (k, c) in mp {
                let e = parse_key(&k)
                    .filter(|e| e.len() == m)
                    .ok_or_else(|| Error::parse(format!("bad exponent key {k:?}")))?;
                let c = to_bigint::<serde_json::Error>(c).map_err(|e| Error::parse(e.to_string()))?;
                f.add_term(e, c);
            }
            Ok(f)
        })
        .collect()
}

impl<'de> Deserialize<'de> for ProjectiveSelfMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let forms = forms_from_json(&v).map_err(D::Error::custom)?;
        make_selfmap(forms).map_err(D::Error::custom)
    }
}

/// Projective height of the full coefficient tuple.
pub fn map_height(f: &ProjectiveSelfMap, prec: u32) -> Ball {
    // coefficients are already coprime
    elementary::ln_bigint(&f.max_abs_coeff(), prec)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapBound {
    /// `max(min(r_plus, r_plus_support), r_minus)`.
    pub r: Ball,
    /// `h(f) + log #(monomials of degree D in n + 1 variables)`.
    pub r_plus: Ball,
    /// `h(f) + log max_i #supp(f_i)`.
    pub r_plus_support: Ball,
    /// `log C` from a certificate, or an empirical value when none was found.
    pub r_minus: Option<Ball>,
    /// `false` when `r_minus` is empirical.
    pub certified: bool,
}

/// `R` with `|h(f(P)) - D h(P)| <= R` for every algebraic point `P`.
pub fn height_gap_bound(f: &ProjectiveSelfMap, prec: u32) -> Result<GapBound> {
    let hf = map_height(f, prec + 16);
    let monos = crate::northcott::binom(f.n as u32 + f.d, f.n as u32);
    let r_plus = hf.add_ball(&elementary::ln_bigint(&monos, prec + 16)).set_prec(prec);
    let supp = f.forms.iter().map(|g| g.num_terms()).max().unwrap_or(1);
    let r_plus_support = hf
        .add_ball(&elementary::ln_bigint(&BigInt::from(supp), prec + 16))
        .set_prec(prec);
    let upper = if r_plus_support.certainly_le(&r_plus) { &r_plus_support } else { &r_plus };
    let searched;
    let cert = match &f.cert {
        Some(c) => Some(c),
        None => {
            searched = NullstellensatzCertificate::search(&f.forms, f.d).ok().flatten();
            searched.as_ref()
        }
    };
    let (r_minus, certified) = match cert {
        Some(c) => (elementary::ln_bigint(&c.c_bound(), prec), true),
        None => (empirical_lower_gap(f, prec), false),
    };
    Ok(GapBound {
        r: upper.max_ball(&r_minus),
        r_plus: r_plus.clone(),
        r_plus_support,
        r_minus: Some(r_minus),
        certified,
    })
}

/// Heuristic: twice the largest `D h(P) - h(f(P))` over 500 random integer
/// points. Not a bound.
fn empirical_lower_gap(f: &ProjectiveSelfMap, prec: u32) -> Ball {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let mut worst = 0f64;
    for _ in 0..500 {
        let x: Vec<BigInt> = (0..=f.n).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
        let x = normalize(x);
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        let y = f.apply_integers(&x);
        if y.iter().all(|c| c.is_zero()) {
            continue;
        }
        let h = |v: &[BigInt]| elementary::ln_bigint(&v.iter().map(|c| c.abs()).max().unwrap(), 64).mid_f64();
        worst = worst.max(f.d as f64 * h(&x) - h(&y));
    }
    Ball::from_f64(2.0 * worst, prec)
}

/// `R / (alpha - 1)`.
pub fn call_silverman_gap(r: &Ball, alpha: f64) -> Result<Ball> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha must exceed 1"));
    }
    let a = Ball::from_f64(alpha, r.prec()).sub_ball(&Ball::one(r.prec()));
    Ok(r.div_ball(&a))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynConstants {
    pub n: u32,
    #[serde(rename = "D")]
    pub d: u32,
    /// `5 n D^(n+1)`.
    #[serde(with = "crate::serde_util::bigint")]
    pub c1: BigInt,
    /// `3^n n^(n+1) (2D)^e`, present when it has at most a million bits.
    pub c2: Option<String>,
    /// `e = n 2^(n+4) D^n`.
    #[serde(with = "crate::serde_util::bigint")]
    pub c2_exponent: BigInt,
    /// `n log 3 + (n+1) log n + e log(2D)`.
    pub log_c2: Ball,
}

pub fn dyn_constants(n: u32, d: u32, prec: u32) -> Result<DynConstants> {
    if n == 0 || d < 2 {
        return Err(Error::domain("need n >= 1 and D >= 2"));
    }
    let bn = BigInt::from(n);
    let bd = BigInt::from(d);
    let c1 = BigInt::from(5) * &bn * num_traits::pow(bd.clone(), n as usize + 1);
    let e = &bn * (BigInt::one() << (n as usize + 4)) * num_traits::pow(bd.clone(), n as usize);
    let wp = prec + 16 + e.bits() as u32;
    let log_c2 = elementary::ln_bigint(&BigInt::from(3), wp)
        .mul_i64(n as i64)
        .add_ball(&elementary::ln_bigint(&bn, wp).mul_i64(n as i64 + 1))
        .add_ball(&elementary::ln_bigint(&(2 * &bd), wp).mul_ball(&Ball::from_bigint(&e, wp)))
        .set_prec(prec);
    let bits = e.to_string().parse::<f64>().unwrap_or(f64::INFINITY) * (2.0 * d as f64).log2();
    let c2 = (bits <= 1e6).then(|| {
        let e = e.to_string().parse::<usize>().expect("small exponent");
        let v: BigInt = num_traits::pow(BigInt::from(3), n as usize)
            * num_traits::pow(bn.clone(), n as usize + 1)
            * num_traits::pow(2 * &bd, e);
        v.to_string()
    });
    Ok(DynConstants {
        n,
        d,
        c1,
        c2,
        c2_exponent: e,
        log_c2,
    })
}

/// x-coordinate duplication map of `y^2 = x^3 + a x + b`:
/// `(x^4 - 2a x^2 z^2 - 8b x z^3 + a^2 z^4, 4z(x^3 + a x z^2 + b z^3))`.
pub fn lattes_duplication(a: &BigRational, b: &BigRational) -> Result<ProjectiveSelfMap> {
    let disc = BigRational::from_integer(4.into()) * a * a * a
        + BigRational::from_integer(27.into()) * b * b;
    if disc.is_zero() {
        return Err(Error::domain("singular curve: 4a^3 + 27b^2 = 0"));
    }
    // scale by l^4 with l clearing both denominators (weights 2 and 3 would
    // keep the curve, but a common factor suffices for the map)
    let l = a.denom().lcm(b.denom());
    let l2 = &l * &l;
    let l4 = &l2 * &l2;
    let one = BigRational::one();
    let coeffs0 = [
        (vec![4, 0], one.clone()),
        (vec![2, 2], -BigRational::from_integer(2.into()) * a),
        (vec![1, 3], -BigRational::from_integer(8.into()) * b),
        (vec![0, 4], a * a),
    ];
    let coeffs1 = [
        (vec![3, 1], BigRational::from_integer(4.into())),
        (vec![1, 3], BigRational::from_integer(4.into()) * a),
        (vec![0, 4], BigRational::from_integer(4.into()) * b),
    ];
    let to_poly = |cs: &[(Vec<u32>, BigRational)]| {
        MultiPoly::from_terms(
            2,
            cs.iter()
                .map(|(e, c)| (e.clone(), (c * BigRational::from_integer(l4.clone())).to_integer())),
        )
    };
    make_selfmap(vec![to_poly(&coeffs0), to_poly(&coeffs1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    pub(crate) fn square_map() -> ProjectiveSelfMap {
        make_selfmap(vec![x(0).pow(2), x(1).pow(2)]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(square_map().degree(), 2);
        let bad = make_selfmap(vec![x(0).pow(2), x(0).mul(&x(1))]);
        assert!(matches!(bad, Err(Error::NotAMorphism(_))));
        assert!(matches!(
            make_selfmap(vec![x(0).pow(2), x(1).pow(3)]),
            Err(Error::Domain(_))
        ));
        let l = lattes_duplication(&BigRational::from_integer((-1).into()), &BigRational::zero()).unwrap();
        assert_eq!(l.degree(), 4);
        let want0 = x(0).pow(2).add(&x(1).pow(2)).pow(2);
        let want1 = x(1).mul(&x(0).pow(3).sub(&x(0).mul(&x(1).pow(2)))).scale(&4.into());
        assert_eq!(l.forms(), &[want0, want1]);
        assert!(lattes_duplication(&BigRational::zero(), &BigRational::zero()).is_err());
        // P^2: (x^2, y^2, z^2) and a degenerate one
        let y = |i| MultiPoly::var(3, i);
        assert!(make_selfmap(vec![y(0).pow(2), y(1).pow(2), y(2).pow(2)]).is_ok());
        assert!(make_selfmap(vec![y(0).pow(2), y(0).mul(&y(1)), y(0).mul(&y(2))]).is_err());
    }

    #[test]
    fn heights_and_gaps() {
        let f = make_selfmap(vec![x(0).pow(2).add(&x(1).pow(2)), x(1).pow(2).scale(&2.into())]).unwrap();
        assert!((map_height(&f, 64).mid_f64() - 2f64.ln()).abs() < 1e-15);
        let f5 = make_selfmap(vec![
            x(0).pow(2).add(&x(1).pow(2)).scale(&5.into()),
            x(1).pow(2).scale(&10.into()),
        ])
        .unwrap();
        assert_eq!(f5, f);
        let g = height_gap_bound(&f, 64).unwrap();
        assert!((g.r_plus.mid_f64() - 6f64.ln()).abs() < 1e-15);
        assert!(g.r.mid_f64() >= 0.0);
        let s = height_gap_bound(&square_map(), 64).unwrap();
        assert!(s.r.mid_f64().abs() < 1e-30 && s.r.rad_f64() < 1e-30);
        assert_eq!(map_height(&square_map(), 64).mid_f64(), 0.0);
    }

    #[test]
    fn constants() {
        let c = dyn_constants(1, 2, 64).unwrap();
        assert_eq!(c.c1, 20.into());
        assert!((c.log_c2.mid_f64() - (3f64.ln() + 64.0 * 4f64.ln())).abs() < 1e-12);
        assert_eq!(c.c2.unwrap(), (BigInt::from(3) * (BigInt::one() << 128usize)).to_string());
        assert_eq!(dyn_constants(2, 2, 64).unwrap().c1, 80.into());
        assert!(dyn_constants(4, 5, 64).unwrap().c2.is_none());
        let six = elementary::ln_bigint(&6.into(), 64);
        assert!((call_silverman_gap(&six, 2.0).unwrap().mid_f64() - 6f64.ln()).abs() < 1e-15);
        let half = call_silverman_gap(&Ball::one(64), 3.0).unwrap();
        assert!((half.mid_f64() - 0.5).abs() < 1e-18);
        assert!(call_silverman_gap(&Ball::one(64), 1.0).is_err());
    }

    #[test]
    fn json() {
        let f = square_map();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"[{"2,0":"1"},{"0,2":"1"}]"#);
        let g: ProjectiveSelfMap = serde_json::from_str(r#"[{"[2,0]":1,"0,2":"1"},{"0,2":2}]"#).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(serde_json::from_str::<ProjectiveSelfMap>(&s).unwrap(), f);
    }
}
