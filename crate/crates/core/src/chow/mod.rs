//! Chow forms of zero-cycles in `P^n` and of effective divisors in `P^2`.

mod philippon;
pub mod qmc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebraic::{AlgebraicNumber, NumberField};
use crate::error::{Error, Result};
use crate::heights::ProjectiveTuple;
use crate::poly::{IntPolynomial, MultiPoly};

pub use philippon::{
    archimedean_component, philippon_height, philippon_tilde_height, ArchMethod,
    PhilipponHeightReport, PhilipponOptions,
};

/// Largest ambient dimension for zero-cycles.
pub const MAX_AMBIENT: usize = 8;

/// Integer form in `r + 1` blocks of `n + 1` dual variables, homogeneous in
/// each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHomogeneousForm {
    block: usize,
    degrees: Vec<u32>,
    poly: MultiPoly,
}

impl MultiHomogeneousForm {
    pub fn new(poly: MultiPoly, block: usize) -> Result<MultiHomogeneousForm> {
        if block == 0 || poly.nvars() % block != 0 {
            return Err(Error::domain("variable count is not a multiple of the block size"));
        }
        if poly.is_zero() {
            return Err(Error::domain("zero form"));
        }
        if !poly.is_multihomogeneous(block) {
            return Err(Error::domain("form is not multihomogeneous"));
        }
        let degrees = poly.block_degrees(block);
        Ok(MultiHomogeneousForm {
            block,
            degrees,
            poly: poly.primitive_part(),
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `n + 1`.
    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn num_blocks(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.poly.max_abs_coeff()
    }

    pub fn mul(&self, o: &MultiHomogeneousForm) -> Result<MultiHomogeneousForm> {
        if self.block != o.block || self.degrees.len() != o.degrees.len() {
            return Err(Error::domain("forms with different block structure"));
        }
        MultiHomogeneousForm::new(self.poly.mul(&o.poly), self.block)
    }

    pub fn pow(&self, k: u32) -> MultiHomogeneousForm {
        MultiHomogeneousForm {
            block: self.block,
            degrees: self.degrees.iter().map(|d| d * k).collect(),
            poly: self.poly.pow(k),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FormTerm {
    exp: Vec<Vec<u32>>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    degrees: Vec<u32>,
    terms: Vec<FormTerm>,
}

impl Serialize for MultiHomogeneousForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .poly
            .terms()
            .iter()
            .rev()
            .map(|(e, c)| FormTerm {
                exp: e.chunks(self.block).map(|b| b.to_vec()).collect(),
                c: c.to_string(),
            })
            .collect();
        FormJson {
            degrees: self.degrees.clone(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiHomogeneousForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        let first = j.terms.first().ok_or_else(|| D::Error::custom("form without terms"))?;
        let block = first.exp.first().map(|b| b.len()).unwrap_or(0);
        let nb = first.exp.len();
        let mut p = MultiPoly::zero(block * nb);
        for t in j.terms {
            if t.exp.len() != nb || t.exp.iter().any(|b| b.len() != block) {
                return Err(D::Error::custom("inconsistent exponent blocks"));
            }
            let c: BigInt = t.c.trim().parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            p.add_term(t.exp.concat(), c);
        }
        let f = MultiHomogeneousForm::new(p, block).map_err(D::Error::custom)?;
        if f.degrees != j.degrees {
            return Err(D::Error::custom("declared degrees do not match the terms"));
        }
        Ok(f)
    }
}

/// A Galois orbit of a point, or an irreducible plane curve.
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Points(ProjectiveTuple),
    Curve(MultiPoly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveCycle {
    n: usize,
    components: Vec<(u32, Component)>,
    /// Chow form of each component, in order.
    forms: Vec<MultiHomogeneousForm>,
}

impl ProjectiveCycle {
    /// Checks multiplicities, dimensions, irreducibility of curves and that
    /// components are pairwise distinct.
    pub fn new(n: usize, components: Vec<(u32, Component)>) -> Result<ProjectiveCycle> {
        if n == 0 || n > MAX_AMBIENT {
            return Err(Error::domain(format!("ambient dimension must be in 1..={MAX_AMBIENT}")));
        }
        if components.is_empty() {
            return Err(Error::domain("empty cycle"));
        }
        let curves = components.iter().filter(|c| matches!(c.1, Component::Curve(_))).count();
        if curves != 0 && curves != components.len() {
            return Err(Error::domain("components of mixed dimension"));
        }
        if curves > 0 && n != 2 {
            return Err(Error::domain("curves are supported only in P^2"));
        }
        let mut forms = Vec::with_capacity(components.len());
        for (m, c) in &components {
            if *m == 0 {
                return Err(Error::domain("multiplicities must be positive"));
            }
            let f = match c {
                Component::Points(p) => {
                    if p.dim() != n {
                        return Err(Error::domain("point of the wrong ambient dimension"));
                    }
                    chow_form_point_orbit(p)?
                }
                Component::Curve(f) => chow_form_plane_curve(f)?,
            };
            if forms.contains(&f) {
                return Err(Error::domain("repeated component; merge it into one multiplicity"));
            }
            forms.push(f);
        }
        Ok(ProjectiveCycle { n, components, forms })
    }

    pub fn point(p: ProjectiveTuple) -> Result<ProjectiveCycle> {
        ProjectiveCycle::new(p.dim(), vec![(1, Component::Points(p))])
    }

    pub fn curve(f: MultiPoly) -> Result<ProjectiveCycle> {
        ProjectiveCycle::new(2, vec![(1, Component::Curve(f))])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[(u32, Component)] {
        &self.components
    }

    pub fn component_forms(&self) -> &[MultiHomogeneousForm] {
        &self.forms
    }

    /// `0` for zero-cycles, `1` for curves.
    pub fn dim(&self) -> usize {
        match self.components[0].1 {
            Component::Points(_) => 0,
            Component::Curve(_) => 1,
        }
    }

    /// The single component with multiplicity one, as its own cycle.
    pub fn component_cycle(&self, i: usize) -> ProjectiveCycle {
        ProjectiveCycle {
            n: self.n,
            components: vec![(1, self.components[i].1.clone())],
            forms: vec![self.forms[i].clone()],
        }
    }
}

/// `sum n_i (dim V_i + 1) deg V_i`.
pub fn big_d(v: &ProjectiveCycle) -> u64 {
    v.components
        .iter()
        .zip(&v.forms)
        .map(|((m, c), f)| {
            let deg = f.degrees()[0] as u64;
            let dim = match c {
                Component::Points(_) => 0,
                Component::Curve(_) => 1,
            };
            *m as u64 * (dim + 1) * deg
        })
        .sum()
}

/// `sum_{i=1}^n 1/(2i)`.
pub fn c_n(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::domain("c(n) needs n >= 1"));
    }
    Ok((1..=n).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(2 * i))
    }))
}

/// `prod_sigma (u_0 sigma(x_0) + ... + u_n sigma(x_n))` over the orbit of
/// the point, made integral and primitive.
pub fn chow_form_point_orbit(p: &ProjectiveTuple) -> Result<MultiHomogeneousForm> {
    let o = orbit_data(p)?;
    MultiHomogeneousForm::new(o.form, p.dim() + 1)
}

/// The point scaled to a leading coordinate 1, in a field generated by its
/// coordinates. The primitive form equals `scale * prod_sigma <u, sigma(y)>`.
pub(crate) struct OrbitData {
    pub field: NumberField,
    pub reps: Vec<crate::poly::RatPolynomial>,
    pub form: MultiPoly,
    pub scale: BigRational,
}

pub(crate) fn orbit_data(p: &ProjectiveTuple) -> Result<OrbitData> {
    let coords = p.coords();
    let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero tuple");
    let ys: Vec<AlgebraicNumber> = coords
        .iter()
        .map(|c| c.div(lead))
        .collect::<Result<_>>()?;
    let (field, reps) = NumberField::generated_by(&ys)?;
    let (norm, s) = field.norm_form(&reps);
    let content = norm.content();
    let form = norm.primitive_part();
    Ok(OrbitData {
        field,
        reps,
        form,
        scale: BigRational::new(s, content),
    })
}

/// `f(u x v)`: the lines `u` and `v` meet on the curve exactly when their
/// intersection point `u x v` lies on it.
pub fn chow_form_plane_curve(f: &MultiPoly) -> Result<MultiHomogeneousForm> {
    if f.nvars() != 3 || f.is_zero() {
        return Err(Error::domain("a plane curve is a nonzero form in 3 variables"));
    }
    if !f.is_multihomogeneous(3) || f.total_degree() == 0 {
        return Err(Error::domain("curve equation must be homogeneous of positive degree"));
    }
    if !is_irreducible_ternary(f)? {
        return Err(Error::domain(
            "curve equation is not irreducible; pass each factor as its own component",
        ));
    }
    let u = |i: usize| MultiPoly::var(6, i);
    let v = |i: usize| MultiPoly::var(6, 3 + i);
    let cross = [
        u(1).mul(&v(2)).sub(&u(2).mul(&v(1))),
        u(2).mul(&v(0)).sub(&u(0).mul(&v(2))),
        u(0).mul(&v(1)).sub(&u(1).mul(&v(0))),
    ];
    MultiHomogeneousForm::new(f.compose(&cross), 3)
}

/// Sufficient test: if `f(q) != 0` and `s -> f(p + s q)` is irreducible of
/// degree `deg f`, any factorization `f = g h` would restrict to one with
/// `deg g(p + s q) = deg g`. Reports `false` only for a certified factor.
fn is_irreducible_ternary(f: &MultiPoly) -> Result<bool> {
    let d = f.total_degree() as usize;
    if d == 1 {
        return Ok(true);
    }
    let pts: Vec<[i64; 3]> = (-3i64..=3)
        .flat_map(|a| (-3i64..=3).flat_map(move |b| (-3i64..=3).map(move |c| [a, b, c])))
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let qs = pts.iter().filter(|q| {
        let qb: Vec<BigInt> = q.iter().map(|&x| x.into()).collect();
        !f.eval(&qb).is_zero()
    });
    for (q, p) in qs.zip(pts.iter().rev().step_by(7)).take(60) {
        // s -> f(p + s q), of exact degree d since f(q) != 0
        let line: Vec<MultiPoly> = (0..3)
            .map(|i| MultiPoly::linear(&[BigInt::from(p[i]), BigInt::from(q[i])]))
            .collect();
        let g = f.compose(&line);
        let cs: Vec<BigInt> = (0..=d).map(|k| g.coeff(&[(d - k) as u32, k as u32])).collect();
        let gp = IntPolynomial::new(cs).primitive_part();
        if crate::poly::is_irreducible(&gp)? {
            return Ok(true);
        }
    }
    Err(Error::domain(
        "could not certify irreducibility of the curve (it is likely reducible)",
    ))
}

/// Product of component forms with multiplicities.
pub fn cycle_chow_form(v: &ProjectiveCycle) -> Result<MultiHomogeneousForm> {
    let mut acc: Option<MultiHomogeneousForm> = None;
    for ((m, _), f) in v.components.iter().zip(&v.forms) {
        let term = f.pow(*m);
        acc = Some(match acc {
            None => term,
            Some(a) => a.mul(&term)?,
        });
    }
    Ok(acc.expect("nonempty cycle"))
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    mult: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    point: Option<Vec<AlgebraicNumber>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    curve: Option<Vec<CurveTermOut>>,
}

#[derive(Serialize, Deserialize)]
struct CurveTermOut {
    exp: [u32; 3],
    #[serde(with = "crate::serde_util::bigint")]
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    n: usize,
    components: Vec<ComponentJson>,
}

impl Serialize for ProjectiveCycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let components = self
            .components
            .iter()
            .map(|(m, c)| match c {
                Component::Points(p) => ComponentJson {
                    mult: *m,
                    point: Some(p.coords().to_vec()),
                    curve: None,
                },
                Component::Curve(f) => ComponentJson {
                    mult: *m,
                    point: None,
                    curve: Some(
                        f.terms()
                            .iter()
                            .rev()
                            .map(|(e, c)| CurveTermOut {
                                exp: [e[0], e[1], e[2]],
                                c: c.clone(),
                            })
                            .collect(),
                    ),
                },
            })
            .collect();
        CycleJson {
            n: self.n,
            components,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectiveCycle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycleJson::deserialize(d)?;
        let mut comps = Vec::with_capacity(j.components.len());
        for c in j.components {
            let comp = match (c.point, c.curve) {
                (Some(p), None) => {
                    Component::Points(ProjectiveTuple::new(p).map_err(D::Error::custom)?)
                }
                (None, Some(ts)) => Component::Curve(MultiPoly::from_terms(
                    3,
                    ts.into_iter().map(|t| (t.exp.to_vec(), t.c)),
                )),
                _ => return Err(D::Error::custom("component needs exactly one of point, curve")),
            };
            comps.push((c.mult, comp));
        }
        ProjectiveCycle::new(j.n, comps).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ints(v: &[i64]) -> ProjectiveTuple {
        ProjectiveTuple::from_integers(v).unwrap()
    }

    fn lin2(a: i64, b: i64) -> MultiPoly {
        MultiPoly::linear(&[a.into(), b.into()])
    }

    #[test]
    fn point_forms() {
        assert_eq!(chow_form_point_orbit(&ints(&[1, 2])).unwrap().poly(), &lin2(1, 2));
        assert_eq!(chow_form_point_orbit(&ints(&[0, 1])).unwrap().poly(), &lin2(0, 1));
        // (2 : 4) is the same point
        assert_eq!(chow_form_point_orbit(&ints(&[2, 4])).unwrap().poly(), &lin2(1, 2));
        let s2 = AlgebraicNumber::nth_root(&q(2), 2).unwrap();
        let p = ProjectiveTuple::new(vec![AlgebraicNumber::one(), s2]).unwrap();
        let f = chow_form_point_orbit(&p).unwrap();
        let u0 = MultiPoly::var(2, 0);
        let u1 = MultiPoly::var(2, 1);
        assert_eq!(f.poly(), &u0.pow(2).sub(&u1.pow(2).scale(&2.into())));
        assert_eq!(f.degrees(), &[2]);
    }

    #[test]
    fn curve_forms() {
        let x0 = MultiPoly::var(3, 0);
        let f = chow_form_plane_curve(&x0).unwrap();
        let u = |i| MultiPoly::var(6, i);
        assert_eq!(f.poly(), &u(1).mul(&u(5)).sub(&u(2).mul(&u(4))));
        // conic x0 x2 - x1^2
        let conic = MultiPoly::var(3, 0).mul(&MultiPoly::var(3, 2)).sub(&MultiPoly::var(3, 1).pow(2));
        let f = chow_form_plane_curve(&conic).unwrap();
        assert_eq!(f.degrees(), &[2, 2]);
        // lines through (1 : t : t^2) for t = 3: u . (1, 3, 9) = 0 = v . (1, 3, 9)
        let u: Vec<BigInt> = [3, -1, 0].iter().map(|&x| x.into()).collect();
        let v: Vec<BigInt> = [9, 0, -1].iter().map(|&x| x.into()).collect();
        assert!(f.poly().eval(&[u, v].concat()).is_zero());
        let reducible = MultiPoly::var(3, 0).mul(&MultiPoly::var(3, 1));
        assert!(chow_form_plane_curve(&reducible).is_err());
    }

    #[test]
    fn cycles() {
        let c = ProjectiveCycle::new(
            1,
            vec![(1, Component::Points(ints(&[1, 2]))), (1, Component::Points(ints(&[1, 3])))],
        )
        .unwrap();
        assert_eq!(cycle_chow_form(&c).unwrap().poly(), &lin2(1, 2).mul(&lin2(1, 3)));
        assert_eq!(big_d(&c), 2);
        let sq = ProjectiveCycle::new(1, vec![(2, Component::Points(ints(&[1, 2])))]).unwrap();
        assert_eq!(cycle_chow_form(&sq).unwrap().poly(), &lin2(1, 2).pow(2));
        let conic = MultiPoly::var(3, 0).mul(&MultiPoly::var(3, 2)).sub(&MultiPoly::var(3, 1).pow(2));
        let c3 = ProjectiveCycle::new(2, vec![(3, Component::Curve(conic))]).unwrap();
        assert_eq!(big_d(&c3), 12);
        assert!(ProjectiveCycle::new(
            1,
            vec![(1, Component::Points(ints(&[1, 2]))), (1, Component::Points(ints(&[2, 4])))]
        )
        .is_err());
        assert_eq!(c_n(3).unwrap(), BigRational::new(11.into(), 12.into()));
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"n":2,"components":[{"mult":1,"curve":[{"exp":[1,0,1],"c":"1"},{"exp":[0,2,0],"c":-1}]}]}"#;
        let c: ProjectiveCycle = serde_json::from_str(s).unwrap();
        assert_eq!(big_d(&c), 4);
        let back: ProjectiveCycle = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        let f = cycle_chow_form(&c).unwrap();
        let t = serde_json::to_string(&f).unwrap();
        let g: MultiHomogeneousForm = serde_json::from_str(&t).unwrap();
        assert_eq!(f, g);
        let p: ProjectiveCycle =
            serde_json::from_str(r#"{"n":1,"components":[{"mult":1,"point":["1","1/2"]}]}"#).unwrap();
        // (1 : 1/2) = (2 : 1)
        assert_eq!(cycle_chow_form(&p).unwrap().poly(), &lin2(2, 1));
    }
}
