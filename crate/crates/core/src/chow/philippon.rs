use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::qmc::{log_integral_s5_pair, QmcOptions};
use super::{big_d, c_n, cycle_chow_form, orbit_data, Component, ProjectiveCycle};
use crate::error::Result;
use crate::numeric::{elementary, Ball, ComplexBall};
use crate::algebraic::NumberField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchMethod {
    ClosedFormLinear,
    Qmc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhilipponOptions {
    pub prec: u32,
    pub qmc: QmcOptions,
    /// Integrate lines numerically too.
    pub force_qmc: bool,
}

impl Default for PhilipponOptions {
    fn default() -> Self {
        PhilipponOptions {
            prec: 128,
            qmc: QmcOptions::default(),
            force_qmc: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhilipponHeightReport {
    pub h_ph: Ball,
    pub h_ph_tilde: Ball,
    pub finite_place_sum: Ball,
    pub archimedean_integral: Ball,
    /// `D(V) c(n)`, exact.
    #[serde(with = "rational_str")]
    pub correction: BigRational,
    #[serde(rename = "D")]
    pub d: u64,
    pub method: ArchMethod,
    /// `false` when any part came from QMC.
    pub rigorous: bool,
    pub normalization: String,
}

mod rational_str {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

const NORMALIZATION: &str =
    "additive: not divided by D(V); the normalized height is h_ph / D";

/// `integral log|f_i| d sigma` for component `i` with multiplicity one.
/// Points use `integral log|<u, x>| = log||x||_2 - c(n)` factor by factor,
/// lines `log||a||_2 - c(2) - 1/4`, higher-degree curves QMC.
pub fn archimedean_component(
    v: &ProjectiveCycle,
    i: usize,
    opts: &PhilipponOptions,
) -> Result<(Ball, ArchMethod)> {
    let wp = opts.prec + 32;
    let cn = Ball::from_rational(&c_n(v.n())?, wp);
    match &v.components()[i].1 {
        Component::Points(p) => {
            let o = orbit_data(p)?;
            let mut acc = elementary::ln_rational(&o.scale, wp);
            for t in o.field.embeddings(wp)? {
                let mut s = Ball::zero(wp);
                for r in &o.reps {
                    let z: ComplexBall = NumberField::evaluate(r, &t);
                    s = s.add_ball(&z.abs_sqr());
                }
                acc = acc.add_ball(&elementary::ln(&s).mul_2exp(-1)).sub_ball(&cn);
            }
            Ok((acc.set_prec(opts.prec), ArchMethod::ClosedFormLinear))
        }
        Component::Curve(f) if f.total_degree() == 1 && !opts.force_qmc => {
            let a = f.primitive_part();
            let s: BigInt = a.terms().values().map(|c| c * c).sum();
            let quarter = Ball::from_f64(0.25, wp);
            let val = elementary::ln_bigint(&s, wp)
                .mul_2exp(-1)
                .sub_ball(&cn)
                .sub_ball(&quarter);
            Ok((val.set_prec(opts.prec), ArchMethod::ClosedFormLinear))
        }
        Component::Curve(_) => {
            let form = &v.component_forms()[i];
            let est = log_integral_s5_pair(form.poly(), &opts.qmc)?;
            Ok((est.value, ArchMethod::Qmc))
        }
    }
}

pub fn philippon_height(v: &ProjectiveCycle, opts: &PhilipponOptions) -> Result<PhilipponHeightReport> {
    let prec = opts.prec;
    let d = big_d(v);
    let correction = c_n(v.n())? * BigRational::from_integer(d.into());
    let mut arch = Ball::zero(prec);
    let mut method = ArchMethod::ClosedFormLinear;
    for (i, (m, _)) in v.components().iter().enumerate() {
        let (a, how) = archimedean_component(v, i, opts)?;
        if how == ArchMethod::Qmc {
            method = ArchMethod::Qmc;
        }
        arch = arch.add_ball(&a.mul_i64(*m as i64));
    }
    // the Chow form is primitive over Z, so every Gauss norm is 1
    let finite = Ball::zero(prec);
    let h = finite
        .add_ball(&arch)
        .add_ball(&Ball::from_rational(&correction, prec + 32))
        .set_prec(prec);
    Ok(PhilipponHeightReport {
        h_ph: h,
        h_ph_tilde: philippon_tilde_height(v, prec)?,
        finite_place_sum: finite,
        archimedean_integral: arch,
        correction,
        d,
        method,
        rigorous: method != ArchMethod::Qmc,
        normalization: NORMALIZATION.into(),
    })
}

/// `log max |coefficient|` of the primitive Chow form of the whole cycle.
pub fn philippon_tilde_height(v: &ProjectiveCycle, prec: u32) -> Result<Ball> {
    let f = cycle_chow_form(v)?;
    Ok(elementary::ln_bigint(&f.max_abs_coeff(), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicNumber;
    use crate::heights::ProjectiveTuple;
    use crate::poly::MultiPoly;

    fn pt(v: &[i64]) -> ProjectiveCycle {
        ProjectiveCycle::point(ProjectiveTuple::from_integers(v).unwrap()).unwrap()
    }

    fn h(v: &ProjectiveCycle) -> PhilipponHeightReport {
        philippon_height(v, &PhilipponOptions::default()).unwrap()
    }

    #[test]
    fn rational_points() {
        let r = h(&pt(&[1, 2]));
        assert!((r.h_ph.mid_f64() - 0.5 * 5f64.ln()).abs() < 1e-15);
        assert!((r.h_ph_tilde.mid_f64() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(r.correction, BigRational::new(1.into(), 2.into()));
        let e = h(&pt(&[1, 0, 0, 0]));
        assert!(e.h_ph.contains_float(&crate::numeric::Float::zero()));
        assert!(e.h_ph_tilde.mid_f64().abs() < 1e-30);
        let two = ProjectiveCycle::new(
            1,
            vec![
                (1, Component::Points(ProjectiveTuple::from_integers(&[1, 2]).unwrap())),
                (1, Component::Points(ProjectiveTuple::from_integers(&[1, 3]).unwrap())),
            ],
        )
        .unwrap();
        let want = 0.5 * 5f64.ln() + 0.5 * 10f64.ln();
        assert!((h(&two).h_ph.mid_f64() - want).abs() < 1e-14);
    }

    #[test]
    fn sqrt_two_orbit() {
        let s2 = AlgebraicNumber::sqrt_rational(&BigInt::from(2).into()).unwrap();
        let p = ProjectiveTuple::new(vec![AlgebraicNumber::one(), s2]).unwrap();
        let r = h(&ProjectiveCycle::point(p).unwrap());
        assert_eq!(r.d, 2);
        assert!((r.h_ph.mid_f64() - 3f64.ln()).abs() < 1e-14);
        assert!((r.h_ph_tilde.mid_f64() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn lines_closed_form() {
        let f = MultiPoly::linear(&[1.into(), 2.into(), (-2).into()]);
        let r = h(&ProjectiveCycle::curve(f).unwrap());
        assert!((r.h_ph.mid_f64() - (3f64.ln() + 0.5)).abs() < 1e-14);
        assert_eq!(r.method, ArchMethod::ClosedFormLinear);
    }
}
