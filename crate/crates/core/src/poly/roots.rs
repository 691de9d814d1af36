//! Certified isolation of complex roots of squarefree integer polynomials.
//!
//! Approximations come from Aberth-Ehrlich iteration, first in `f64` and then
//! at increasing working precision. Each approximation `z_i` is certified by
//! the Weierstrass correction `W_i = f(z_i) / (lc prod_{j != i}(z_i - z_j))`:
//! the discs `D(z_i, n |W_i|)` cover all roots and a disc disjoint from the
//! others holds exactly one. We return the bounding boxes of those discs and
//! require the boxes themselves to be pairwise disjoint.

use num_complex::Complex64;
use num_traits::Zero;

use super::int::{bigint_to_f64, IntPolynomial};
use crate::error::{Error, Result};
use crate::numeric::{Ball, ComplexBall, Float, Mag};

/// Working precision beyond which isolation gives up.
pub const MAX_ISOLATION_PREC: u32 = 1 << 15;

/// Multiprecision complex approximation (no error tracking).
#[derive(Clone, Debug)]
struct Cf {
    re: Float,
    im: Float,
}

impl Cf {
    fn from_c64(z: Complex64) -> Cf {
        Cf {
            re: Float::from_f64(z.re),
            im: Float::from_f64(z.im),
        }
    }

    fn add(&self, o: &Cf, p: u32) -> Cf {
        Cf {
            re: self.re.add_round(&o.re, p).0,
            im: self.im.add_round(&o.im, p).0,
        }
    }

    fn sub(&self, o: &Cf, p: u32) -> Cf {
        self.add(&Cf { re: o.re.neg(), im: o.im.neg() }, p)
    }

    fn mul(&self, o: &Cf, p: u32) -> Cf {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Cf {
            re: re.round(p).0,
            im: im.round(p).0,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn div(&self, o: &Cf, p: u32) -> Cf {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im)).round(p + 8).0;
        let nr = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let ni = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Cf {
            re: nr.div(&den, p).0,
            im: ni.div(&den, p).0,
        }
    }

    /// `floor(log2 |z|)` up to one, or `None` at zero.
    fn log2_mag(&self) -> Option<i64> {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => None,
            (false, true) => Some(self.re.top()),
            (true, false) => Some(self.im.top()),
            (false, false) => Some(self.re.top().max(self.im.top())),
        }
    }
}

/// Roots of a squarefree polynomial as disjoint boxes, sorted by the real and
/// then the imaginary part of the midpoint. Real roots have an exactly zero
/// imaginary part. Each box has radius at most `2^-accuracy_bits max(1, |z|)`.
pub fn isolate_roots(f: &IntPolynomial, accuracy_bits: u32) -> Result<Vec<ComplexBall>> {
    check_input(f)?;
    let n = f.deg();
    if n == 0 {
        return Ok(vec![]);
    }
    let start = initial_f64(f);
    refine_and_certify(f, start, accuracy_bits)
}

/// As [`isolate_roots`] but starting from caller-supplied approximations, one
/// per root. Useful for high degree where the `f64` stage cannot resolve the
/// roots.
pub fn isolate_with_hints(
    f: &IntPolynomial,
    hints: &[(f64, f64)],
    accuracy_bits: u32,
) -> Result<Vec<ComplexBall>> {
    check_input(f)?;
    if hints.len() != f.deg() {
        return Err(Error::domain(format!(
            "expected {} root hints, got {}",
            f.deg(),
            hints.len()
        )));
    }
    let start = hints.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
    refine_and_certify(f, start, accuracy_bits)
}

fn check_input(f: &IntPolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::domain("zero polynomial has no isolated roots"));
    }
    if !f.is_squarefree() {
        return Err(Error::domain("root isolation needs a squarefree polynomial"));
    }
    Ok(())
}

fn refine_and_certify(
    f: &IntPolynomial,
    start: Vec<Complex64>,
    accuracy_bits: u32,
) -> Result<Vec<ComplexBall>> {
    let n = f.deg();
    if n == 1 {
        // -c0 / c1, exact when the denominator is a power of two, else a box
        let q = num_rational::BigRational::new(-f.coeff(0), f.coeff(1));
        let prec = accuracy_bits + 16;
        return Ok(vec![ComplexBall::new(
            Ball::from_rational(&q, prec),
            Ball::zero(prec),
        )]);
    }
    let coeffs: Vec<Float> = f.coeffs().iter().map(Float::from_bigint).collect();
    // Horner near a root cancels about log2(sum |a_k| |z|^k) bits
    let radius = start.iter().map(|c| c.norm()).filter(|r| r.is_finite()).fold(1.0f64, f64::max);
    let cancel = f.max_coeff_bits() as f64 + n as f64 * radius.log2();
    let mut prec = (accuracy_bits + 32)
        .max(64 + f.max_coeff_bits() as u32 / 2)
        .max(accuracy_bits + 32 + cancel.min(1e6) as u32);
    let mut z: Vec<Cf> = start.into_iter().map(Cf::from_c64).collect();
    let mut first = true;
    loop {
        let sweeps = if first { 40 + 4 * n } else { 40 };
        first = false;
        aberth_mp(&coeffs, &mut z, prec, sweeps);
        if let Some(boxes) = certify(f, &z, prec) {
            let ok = boxes.iter().all(|b| accurate(b, accuracy_bits));
            if ok {
                return Ok(sort_roots(boxes));
            }
        }
        prec *= 2;
        if prec > MAX_ISOLATION_PREC {
            return Err(Error::resource(format!(
                "root isolation of a degree {n} polynomial exceeded {MAX_ISOLATION_PREC} bits"
            )));
        }
    }
}

/// Sorts by real midpoint, except that runs of roots with overlapping real
/// parts (conjugate pairs, purely imaginary roots) are ordered by imaginary
/// midpoint, so the order does not depend on noise in equal real parts.
pub fn sort_roots(boxes: Vec<ComplexBall>) -> Vec<ComplexBall> {
    sort_tagged(boxes.into_iter().map(|b| (b, ())).collect())
        .into_iter()
        .map(|(b, _)| b)
        .collect()
}

/// [`sort_roots`] carrying a tag with each box.
pub fn sort_tagged<T>(mut items: Vec<(ComplexBall, T)>) -> Vec<(ComplexBall, T)> {
    items.sort_by(|a, b| a.0.re.mid().cmp(b.0.re.mid()));
    let mut out = Vec::with_capacity(items.len());
    let mut run: Vec<(ComplexBall, T)> = Vec::new();
    for it in items {
        if let Some(last) = run.last() {
            if !last.0.re.overlaps(&it.0.re) {
                run.sort_by(|x, y| x.0.im.mid().cmp(y.0.im.mid()));
                out.append(&mut run);
            }
        }
        run.push(it);
    }
    run.sort_by(|x, y| x.0.im.mid().cmp(y.0.im.mid()));
    out.append(&mut run);
    out
}

/// Whether box `a` lies inside box `b`.
pub fn box_inside(a: &ComplexBall, b: &ComplexBall) -> bool {
    fn inside(x: &Ball, y: &Ball) -> bool {
        x.is_finite() && y.is_finite() && x.lower() >= y.lower() && x.upper() <= y.upper()
    }
    inside(&a.re, &b.re) && inside(&a.im, &b.im)
}

fn accurate(b: &ComplexBall, bits: u32) -> bool {
    let r = b.re.rad().max(b.im.rad());
    if r.is_zero() {
        return true;
    }
    let scale = b.mag_upper().max(Mag::pow2(0));
    r.log2_ceil() <= scale.log2_ceil() - bits as i64
}

/// Horner evaluation of `f` and `f'`.
fn horner(coeffs: &[Float], z: &Cf, p: u32) -> (Cf, Cf) {
    let zero = Cf {
        re: Float::zero(),
        im: Float::zero(),
    };
    let mut v = zero.clone();
    let mut d = zero;
    for c in coeffs.iter().rev() {
        d = d.mul(z, p).add(&v, p);
        v = v.mul(z, p);
        v.re = v.re.add_round(c, p).0;
    }
    (v, d)
}

/// Gauss-Seidel Aberth sweeps at precision `p`, stopping once every
/// correction is below the working precision or has stopped shrinking.
/// The pair sum `sum 1/(z_i - z_j)` only needs a few correct bits once the
/// Newton ratio is small, so it runs in `f64` unless two points are too
/// close for `f64` to separate.
fn aberth_mp(coeffs: &[Float], z: &mut [Cf], p: u32, max_sweeps: usize) {
    let n = z.len();
    let mut done = vec![false; n];
    let mut last = vec![i64::MAX; n];
    let one = Cf {
        re: Float::one(),
        im: Float::zero(),
    };
    let mut zf: Vec<Complex64> = z.iter().map(|c| Complex64::new(c.re.to_f64(), c.im.to_f64())).collect();
    let usable = |c: &Complex64| c.re.is_finite() && c.im.is_finite() && c.norm() < 1e150 && c.norm() > 1e-150;
    for _ in 0..max_sweeps {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d) = horner(coeffs, &z[i], p);
            if v.is_zero() {
                done[i] = true;
                continue;
            }
            let mut sf = Complex64::zero();
            let mut s = Cf {
                re: Float::zero(),
                im: Float::zero(),
            };
            for j in 0..n {
                if j == i {
                    continue;
                }
                let df = zf[i] - zf[j];
                let scale = zf[i].norm().max(zf[j].norm()).max(1e-300);
                if usable(&zf[i]) && usable(&zf[j]) && df.norm() > 1e-9 * scale {
                    sf += 1.0 / df;
                } else {
                    let diff = z[i].sub(&z[j], p);
                    if !diff.is_zero() {
                        s = s.add(&one.div(&diff, p), p);
                    }
                }
            }
            s = s.add(&Cf::from_c64(sf), p);
            let w = if d.is_zero() {
                // nudge off a critical point
                Cf {
                    re: Float::one().mul_2exp(-(p as i64) / 4),
                    im: Float::one().mul_2exp(-(p as i64) / 3),
                }
            } else {
                let newton = v.div(&d, p);
                let den = one.sub(&newton.mul(&s, p), p);
                if den.is_zero() {
                    newton
                } else {
                    newton.div(&den, p)
                }
            };
            z[i] = z[i].sub(&w, p);
            zf[i] = Complex64::new(z[i].re.to_f64(), z[i].im.to_f64());
            let scale = z[i].log2_mag().unwrap_or(0).max(0);
            match w.log2_mag() {
                Some(e) if e > scale - p as i64 + 8 => {
                    // noise floor: small and no longer shrinking
                    if e < scale - 20 && e >= last[i] - 1 {
                        done[i] = true;
                    } else {
                        all = false;
                    }
                    last[i] = e;
                }
                _ => done[i] = true,
            }
        }
        if all {
            break;
        }
    }
}

/// Boxes around each approximation, or `None` when they fail to separate.
fn certify(f: &IntPolynomial, z: &[Cf], p: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let lc = Ball::from_bigint(&f.lc(), p);
    let pts: Vec<ComplexBall> = z
        .iter()
        .map(|c| ComplexBall::from_floats(c.re.clone(), c.im.clone(), p))
        .collect();
    let mut rad = Vec::with_capacity(n);
    for i in 0..n {
        let fz = f.eval_complex(&pts[i]);
        let mut den = ComplexBall::real(lc.clone());
        for j in 0..n {
            if j != i {
                den = low(&den.mul(&low(&pts[i].sub(&pts[j]))));
            }
        }
        if den.contains_zero() {
            return None;
        }
        let w = fz.div(&den);
        if !w.is_finite() {
            return None;
        }
        rad.push(w.mag_upper().mul(Mag::from_u64(n as u64)));
    }
    // pairwise disjoint boxes
    for i in 0..n {
        for j in i + 1..n {
            if !boxes_apart(&z[i], rad[i], &z[j], rad[j]) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let conj = Cf {
            re: z[i].re.clone(),
            im: z[i].im.neg(),
        };
        let meets_axis = Float::from_mag(rad[i]) >= z[i].im.abs();
        let real = meets_axis
            && (0..n).all(|j| j == i || boxes_apart(&conj, rad[i], &z[j], rad[j]));
        let re = Ball::new(z[i].re.clone(), rad[i], p);
        let im = if real {
            Ball::zero(p)
        } else {
            Ball::new(z[i].im.clone(), rad[i], p)
        };
        out.push(ComplexBall::new(re, im));
    }
    Some(out)
}

/// Rounds to 64 bits, folding the rounding error into the radius.
fn low(z: &ComplexBall) -> ComplexBall {
    let r = |b: &Ball| {
        let (m, e) = b.mid().round(64);
        Ball::new(m, b.rad().add(e), 64)
    };
    ComplexBall::new(r(&z.re), r(&z.im))
}

fn boxes_apart(a: &Cf, ra: Mag, b: &Cf, rb: Mag) -> bool {
    let r = Float::from_mag(ra.add(rb));
    a.re.sub(&b.re).abs() > r || a.im.sub(&b.im).abs() > r
}

/// `f64` Aberth approximations, or the initial points when the iteration
/// produces non-finite values.
fn initial_f64(f: &IntPolynomial) -> Vec<Complex64> {
    let n = f.deg();
    let shift = f.max_coeff_bits() as i64 - 900;
    let a: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| {
            if shift > 0 {
                bigint_to_f64(&(c >> shift as u64))
            } else {
                bigint_to_f64(c)
            }
        })
        .collect();
    let init = newton_polygon_start(&a);
    let mut z = init.clone();
    let mut done = vec![false; n];
    for _ in 0..(200 + 10 * n) {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let newton = newton_ratio(&a, z[i]);
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = newton / (1.0 - newton * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                done[i] = true;
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-14 * z[i].norm().max(1.0) {
                all = false;
            } else {
                done[i] = true;
            }
        }
        if all {
            break;
        }
    }
    if z.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        z
    } else {
        init
    }
}

/// `f(z)/f'(z)`, evaluated through the reversed polynomial outside the unit
/// disc.
fn newton_ratio(a: &[f64], z: Complex64) -> Complex64 {
    let n = a.len() - 1;
    if z.norm() <= 1.0 {
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for &c in a.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        v / d
    } else {
        let w = 1.0 / z;
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for &c in a.iter() {
            d = d * w + v;
            v = v * w + c;
        }
        z / (n as f64 - w * d / v)
    }
}

/// Points on circles with radii read off the upper convex hull of
/// `(i, log|a_i|)`.
fn newton_polygon_start(a: &[f64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let pts: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| (i, c.abs().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (i1, l1) = hull[hull.len() - 2];
            let (i2, l2) = hull[hull.len() - 1];
            // drop the middle point when it lies on or below the chord
            let cross = (i2 as f64 - i1 as f64) * (p.1 - l1) - (l2 - l1) * (p.0 as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    // zero roots when the lowest coefficients vanish
    let low = hull.first().map(|h| h.0).unwrap_or(0);
    for k in 0..low {
        out.push(Complex64::from_polar(1e-300_f64.max(f64::MIN_POSITIVE), k as f64));
    }
    let tau = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let m = k - i;
        let r = ((li - lk) / m as f64).exp().clamp(1e-250, 1e250);
        for j in 0..m {
            let theta = tau * j as f64 / m as f64 + tau * i as f64 / n as f64 + 0.4;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(b: &ComplexBall, re: f64, im: f64) -> bool {
        let (cr, ci) = b.mid_f64();
        (cr - re).abs() <= b.re.rad_f64() + 1e-12 && (ci - im).abs() <= b.im.rad_f64() + 1e-12
    }

    #[test]
    fn quadratic_real_roots() {
        let f = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let r = isolate_roots(&f, 100).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].im.is_zero_exact() && r[1].im.is_zero_exact());
        assert!(contains(&r[1], 2f64.sqrt(), 0.0));
        assert!(r[1].re.rad_f64() < 1e-28);
    }

    #[test]
    fn cyclotomic_roots_on_circle() {
        let f = IntPolynomial::from_i64s(&[1, 1, 1, 1, 1]);
        let r = isolate_roots(&f, 60).unwrap();
        assert_eq!(r.len(), 4);
        for b in &r {
            let a = b.abs();
            assert!(a.contains_float(&Float::one()));
            assert!(!b.im.contains_zero());
        }
    }

    #[test]
    fn wilkinson_like() {
        // (x-1)(x-2)...(x-12)
        let mut f = IntPolynomial::one();
        for k in 1..=12 {
            f = f.mul(&IntPolynomial::from_i64s(&[-k, 1]));
        }
        let r = isolate_roots(&f, 50).unwrap();
        for (k, b) in r.iter().enumerate() {
            assert!(b.re.contains_bigint(&((k + 1) as i64).into()));
            assert!(b.im.is_zero_exact());
        }
    }

    #[test]
    fn hints_for_high_degree() {
        // x^60 - 2 with hints on the circle
        let mut c = vec![0i64; 61];
        c[0] = -2;
        c[60] = 1;
        let f = IntPolynomial::from_i64s(&c);
        let r0 = 2f64.powf(1.0 / 60.0);
        let hints: Vec<(f64, f64)> = (0..60)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / 60.0;
                (r0 * t.cos(), r0 * t.sin())
            })
            .collect();
        let r = isolate_with_hints(&f, &hints, 80).unwrap();
        assert_eq!(r.len(), 60);
        assert_eq!(r.iter().filter(|b| b.im.is_zero_exact()).count(), 2);
        let r2 = isolate_roots(&f, 80).unwrap();
        assert_eq!(r2.len(), 60);
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = IntPolynomial::from_i64s(&[1, 2, 1]);
        assert!(isolate_roots(&f, 10).is_err());
    }
}
