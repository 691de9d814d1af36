//! Algebraic numbers: an irreducible primitive integer polynomial together
//! with a box that isolates one of its roots.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::decimal::{parse_rational, rational_string};
use crate::numeric::{elementary, Ball, ComplexBall, Float};
use crate::poly::{
    box_inside, irreducible_factors, is_irreducible, isolate_roots, isolate_with_hints, resultant,
    sort_tagged, IntPolynomial, RatPolynomial,
};

/// Accuracy (bits) of the stored isolating boxes.
pub const BASE_BITS: u32 = 40;

/// Accuracy beyond which root selection gives up.
const MAX_LOCATE_BITS: u32 = 1 << 13;

/// Largest degree accepted by constructors that verify irreducibility.
pub const MAX_CHECKED_DEGREE: usize = crate::poly::factor::MAX_FACTOR_DEGREE;

type Hints = Option<Arc<Vec<(f64, f64)>>>;

#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
    index: usize,
    roots: Arc<Vec<ComplexBall>>,
    hints: Hints,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.index == o.index && self.minpoly == o.minpoly
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.minpoly.hash(h);
        self.index.hash(h);
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Degree, then minimal polynomial, then root index: a canonical order, not
/// the order of the reals.
impl Ord for AlgebraicNumber {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.minpoly.cmp(&o.minpoly))
            .then_with(|| self.index.cmp(&o.index))
    }
}

fn isolate(f: &IntPolynomial, hints: &Hints, bits: u32) -> Result<Vec<ComplexBall>> {
    match hints {
        Some(h) => isolate_with_hints(f, h, bits),
        None => isolate_roots(f, bits),
    }
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> AlgebraicNumber {
        let minpoly = IntPolynomial::linear_root(q).primitive_part();
        let roots = isolate_roots(&minpoly, BASE_BITS).expect("linear polynomial");
        AlgebraicNumber {
            minpoly,
            index: 0,
            roots: Arc::new(roots),
            hints: None,
        }
    }

    pub fn from_integer(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn zero() -> AlgebraicNumber {
        AlgebraicNumber::from_integer(0)
    }

    pub fn one() -> AlgebraicNumber {
        AlgebraicNumber::from_integer(1)
    }

    /// The `selector`-th distinct root of `p`, with roots ordered by real and
    /// then imaginary part. The minimal polynomial is the irreducible factor
    /// of `p` vanishing there.
    pub fn root_of(p: &IntPolynomial, selector: usize) -> Result<AlgebraicNumber> {
        let mut all = AlgebraicNumber::roots_of(p)?;
        if selector >= all.len() {
            return Err(Error::Index(format!(
                "root selector {selector} out of range for {} distinct roots",
                all.len()
            )));
        }
        Ok(all.swap_remove(selector))
    }

    /// All distinct roots of `p` in selector order.
    pub fn roots_of(p: &IntPolynomial) -> Result<Vec<AlgebraicNumber>> {
        if p.is_zero() || p.deg() == 0 {
            return Err(Error::domain("root_of needs a polynomial of degree at least 1"));
        }
        let factors = irreducible_factors(p)?;
        let mut tagged = Vec::new();
        let mut lists = Vec::new();
        for (k, g) in factors.iter().enumerate() {
            let rs = Arc::new(isolate_roots(g, BASE_BITS)?);
            for (i, r) in rs.iter().enumerate() {
                tagged.push((r.clone(), (k, i)));
            }
            lists.push(rs);
        }
        Ok(sort_tagged(tagged)
            .into_iter()
            .map(|(_, (k, i))| AlgebraicNumber {
                minpoly: factors[k].clone(),
                index: i,
                roots: lists[k].clone(),
                hints: None,
            })
            .collect())
    }

    /// Root `index` of an irreducible polynomial (checked).
    pub fn from_minpoly(minpoly: &IntPolynomial, index: usize) -> Result<AlgebraicNumber> {
        if minpoly.is_zero() || minpoly.deg() == 0 {
            return Err(Error::domain("minimal polynomial must have degree at least 1"));
        }
        if !is_irreducible(minpoly)? {
            return Err(Error::domain(format!("{minpoly} is reducible")));
        }
        let minpoly = minpoly.primitive_part();
        let roots = isolate_roots(&minpoly, BASE_BITS)?;
        if index >= roots.len() {
            return Err(Error::Index(format!("root index {index} out of range")));
        }
        Ok(AlgebraicNumber {
            minpoly,
            index,
            roots: Arc::new(roots),
            hints: None,
        })
    }

    /// All roots of a polynomial the caller knows to be irreducible, for
    /// degrees beyond the factorization cap. `hints` are optional starting
    /// approximations, one per root; certification does not depend on them.
    pub fn conjugate_set_unchecked(
        minpoly: &IntPolynomial,
        hints: Option<Vec<(f64, f64)>>,
    ) -> Result<Vec<AlgebraicNumber>> {
        if minpoly.is_zero() || minpoly.deg() == 0 {
            return Err(Error::domain("minimal polynomial must have degree at least 1"));
        }
        let minpoly = minpoly.primitive_part();
        let hints = hints.map(Arc::new);
        let roots = Arc::new(isolate(&minpoly, &hints, BASE_BITS)?);
        Ok((0..roots.len())
            .map(|index| AlgebraicNumber {
                minpoly: minpoly.clone(),
                index,
                roots: roots.clone(),
                hints: hints.clone(),
            })
            .collect())
    }

    /// Root of a known-irreducible `minpoly` whose enclosures `target(bits)`
    /// single out one root.
    fn locate(
        minpoly: IntPolynomial,
        hints: Hints,
        mut target: impl FnMut(u32) -> Result<ComplexBall>,
    ) -> Result<AlgebraicNumber> {
        let roots = Arc::new(isolate(&minpoly, &hints, BASE_BITS)?);
        let mut bits = BASE_BITS;
        loop {
            let z = target(bits)?;
            let hits: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].overlaps(&z)).collect();
            match hits.len() {
                1 => {
                    return Ok(AlgebraicNumber {
                        minpoly,
                        index: hits[0],
                        roots,
                        hints,
                    })
                }
                0 => return Err(Error::domain("enclosure meets no root of the candidate polynomial")),
                _ => {}
            }
            bits *= 2;
            if bits > MAX_LOCATE_BITS {
                return Err(Error::resource("could not separate roots while locating a value"));
            }
        }
    }

    /// The one irreducible factor among `cands` with a root inside every
    /// enclosure `target(bits)`.
    fn select(
        cands: Vec<IntPolynomial>,
        mut target: impl FnMut(u32) -> Result<ComplexBall>,
    ) -> Result<AlgebraicNumber> {
        if cands.len() == 1 {
            return AlgebraicNumber::locate(cands.into_iter().next().unwrap(), None, target);
        }
        let mut bits = BASE_BITS;
        loop {
            let z = target(bits)?;
            let mut hit = None;
            let mut count = 0;
            for (k, g) in cands.iter().enumerate() {
                if g.deg() == 1 {
                    let r = BigRational::new(-g.coeff(0), g.coeff(1));
                    if z.re.contains_rational(&r) && z.im.contains_zero() {
                        count += 1;
                        hit = Some(k);
                    }
                    continue;
                }
                let n = isolate_roots(g, bits)?.iter().filter(|r| r.overlaps(&z)).count();
                if n > 0 {
                    count += n;
                    hit = Some(k);
                }
            }
            if count == 1 {
                let g = cands[hit.unwrap()].clone();
                return AlgebraicNumber::locate(g, None, target);
            }
            if count == 0 {
                return Err(Error::domain("value matches no candidate factor"));
            }
            bits *= 2;
            if bits > MAX_LOCATE_BITS {
                return Err(Error::resource("could not separate candidate roots"));
            }
        }
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    /// Position among the conjugates in selector order.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Stored isolating box.
    pub fn region(&self) -> &ComplexBall {
        &self.roots[self.index]
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.minpoly.coeff(0).is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.region().im.is_zero_exact()
    }

    /// Whether the minimal polynomial is monic.
    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.lc().is_one()
    }

    /// Certified boxes around all conjugates, each of radius at most
    /// `2^-bits max(1, |z|)`, in selector order.
    pub fn conjugates(&self, bits: u32) -> Result<Vec<ComplexBall>> {
        if bits <= BASE_BITS {
            return Ok(self.roots.as_ref().clone());
        }
        isolate(&self.minpoly, &self.hints, bits)
    }

    /// The other roots of the same minimal polynomial, including `self`.
    pub fn all_conjugates(&self) -> Vec<AlgebraicNumber> {
        (0..self.degree())
            .map(|index| AlgebraicNumber {
                index,
                ..self.clone()
            })
            .collect()
    }

    /// Box around `self` of radius at most `2^-bits max(1, |self|)`.
    pub fn enclosure(&self, bits: u32) -> Result<ComplexBall> {
        if bits <= BASE_BITS {
            return Ok(self.region().clone());
        }
        let base = self.region();
        let mut b = bits;
        loop {
            let rs = isolate(&self.minpoly, &self.hints, b)?;
            let hits: Vec<&ComplexBall> = rs.iter().filter(|r| r.overlaps(base)).collect();
            if hits.len() == 1 {
                return Ok(hits[0].clone());
            }
            let inside: Vec<&&ComplexBall> = hits.iter().filter(|r| box_inside(r, base)).collect();
            if inside.len() == 1 {
                return Ok((*inside[0]).clone());
            }
            b *= 2;
            if b > MAX_LOCATE_BITS {
                return Err(Error::resource("could not refine root enclosure"));
            }
        }
    }

    /// Enclosure at a ball precision: accuracy about `prec` bits.
    pub fn enclosure_prec(&self, prec: u32) -> Result<ComplexBall> {
        Ok(self.enclosure(prec)?.set_prec(prec))
    }

    pub fn complex_conjugate(&self) -> AlgebraicNumber {
        if self.is_real() {
            return self.clone();
        }
        let c = self.region().conj();
        let index = (0..self.roots.len())
            .find(|&i| self.roots[i].overlaps(&c) && i != self.index)
            .expect("conjugate boxes are symmetric");
        AlgebraicNumber {
            index,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> AlgebraicNumber {
        if let Some(q) = self.to_rational() {
            return AlgebraicNumber::from_rational(&-q);
        }
        let f = self.minpoly.negate_var().primitive_part();
        let me = self.clone();
        AlgebraicNumber::locate(f, None, |b| Ok(me.enclosure(b)?.neg()))
            .expect("negation preserves isolation")
    }

    pub fn inv(&self) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(AlgebraicNumber::from_rational(&q.recip()));
        }
        let f = self.minpoly.reverse().primitive_part();
        let me = self.clone();
        AlgebraicNumber::locate(f, None, |b| Ok(me.enclosure(b + 8)?.inv()))
    }

    pub fn add(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        match (self.to_rational(), o.to_rational()) {
            (Some(a), Some(b)) => return Ok(AlgebraicNumber::from_rational(&(a + b))),
            (Some(q), None) => return o.add_rational(&q),
            (None, Some(q)) => return self.add_rational(&q),
            _ => {}
        }
        let r = sum_resultant(&self.minpoly, &o.minpoly);
        let cands = irreducible_factors(&r)?;
        let (a, b) = (self.clone(), o.clone());
        AlgebraicNumber::select(cands, |bits| {
            Ok(a.enclosure(bits + 4)?.add(&b.enclosure(bits + 4)?))
        })
    }

    pub fn sub(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        if self.is_zero() || o.is_zero() {
            return Ok(AlgebraicNumber::zero());
        }
        match (self.to_rational(), o.to_rational()) {
            (Some(a), Some(b)) => return Ok(AlgebraicNumber::from_rational(&(a * b))),
            (Some(q), None) => return Ok(o.mul_rational(&q)),
            (None, Some(q)) => return Ok(self.mul_rational(&q)),
            _ => {}
        }
        let r = product_resultant(&self.minpoly, &o.minpoly);
        let cands = irreducible_factors(&r)?;
        let (a, b) = (self.clone(), o.clone());
        AlgebraicNumber::select(cands, |bits| {
            let za = a.enclosure(bits + 8)?;
            let zb = b.enclosure(bits + 8)?;
            Ok(za.mul(&zb))
        })
    }

    pub fn div(&self, o: &AlgebraicNumber) -> Result<AlgebraicNumber> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Result<AlgebraicNumber> {
        let mut acc = AlgebraicNumber::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn add_rational(&self, q: &BigRational) -> Result<AlgebraicNumber> {
        if let Some(a) = self.to_rational() {
            return Ok(AlgebraicNumber::from_rational(&(a + q)));
        }
        let f = self.minpoly.shift_rational(&-q.clone()).primitive_part();
        let me = self.clone();
        let q = q.clone();
        AlgebraicNumber::locate(f, self.hints_shifted(&q), move |b| {
            let z = me.enclosure(b + 4)?;
            let p = z.prec();
            Ok(z.add(&ComplexBall::from_rational(&q, p)))
        })
    }

    pub fn mul_rational(&self, q: &BigRational) -> AlgebraicNumber {
        if q.is_zero() {
            return AlgebraicNumber::zero();
        }
        if let Some(a) = self.to_rational() {
            return AlgebraicNumber::from_rational(&(a * q));
        }
        // f(x / q) with denominators cleared
        let f = self
            .minpoly
            .scale_var(q.denom(), q.numer())
            .primitive_part();
        let me = self.clone();
        let q = q.clone();
        AlgebraicNumber::locate(f, None, move |b| {
            let z = me.enclosure(b + 4 + q.numer().bits() as u32)?;
            let p = z.prec();
            Ok(z.mul_real(&Ball::from_rational(&q, p)))
        })
        .expect("scaling preserves isolation")
    }

    fn hints_shifted(&self, q: &BigRational) -> Hints {
        let dq = elementary::f64_of(&Ball::from_rational(q, 64));
        self.hints
            .as_ref()
            .map(|h| Arc::new(h.iter().map(|&(a, b)| (a + dq, b)).collect()))
    }

    /// The positive real `d`-th root of a positive rational. The minimal
    /// polynomial is `den x^m - num` after extracting the largest perfect
    /// power (Capelli), so no factorization is needed.
    pub fn nth_root(q: &BigRational, d: u32) -> Result<AlgebraicNumber> {
        if !q.is_positive() {
            return Err(Error::domain("nth_root needs a positive rational"));
        }
        if d == 0 {
            return Err(Error::domain("nth_root needs d >= 1"));
        }
        let (mut num, mut den) = (q.numer().clone(), q.denom().clone());
        let mut m = d;
        // strip prime factors p of m while q is a p-th power
        let mut p = 2;
        while p <= m {
            if m % p == 0 {
                let rn = num.nth_root(p);
                let rd = den.nth_root(p);
                if rn.pow(p) == num && rd.pow(p) == den {
                    num = rn;
                    den = rd;
                    m /= p;
                    continue;
                }
            }
            p += 1;
        }
        let r = BigRational::new(num.clone(), den.clone());
        if m == 1 {
            return Ok(AlgebraicNumber::from_rational(&r));
        }
        let mut c = vec![BigInt::zero(); m as usize + 1];
        c[0] = -num;
        c[m as usize] = den;
        let f = IntPolynomial::new(c);
        AlgebraicNumber::locate(f, None, move |b| {
            let prec = b + 16;
            let lr = elementary::ln_rational(&r, prec);
            let v = elementary::exp(&lr.div_i64(m as i64));
            Ok(ComplexBall::real(v))
        })
    }

    /// Square root of a rational (any sign): the real non-negative root, or
    /// `i sqrt(-q)` for negative `q`.
    pub fn sqrt_rational(q: &BigRational) -> Result<AlgebraicNumber> {
        if q.is_zero() {
            return Ok(AlgebraicNumber::zero());
        }
        if q.is_positive() {
            return AlgebraicNumber::nth_root(q, 2);
        }
        let r = AlgebraicNumber::nth_root(&-q.clone(), 2)?;
        r.mul(&AlgebraicNumber::i())
    }

    /// The imaginary unit.
    pub fn i() -> AlgebraicNumber {
        let f = IntPolynomial::from_i64s(&[1, 0, 1]);
        AlgebraicNumber::locate(f, None, |b| {
            Ok(ComplexBall::new(Ball::zero(b + 8), Ball::one(b + 8)))
        })
        .expect("i is isolated")
    }

    /// Rectangle of the stored box with rational endpoints.
    pub fn region_rational(&self) -> [(BigRational, BigRational); 2] {
        let r = self.region();
        [ball_endpoints(&r.re), ball_endpoints(&r.im)]
    }

    /// Number with the given minimal polynomial whose root lies in the
    /// rectangle; the rectangle must isolate exactly one root.
    pub fn from_region(
        minpoly: &IntPolynomial,
        re: (BigRational, BigRational),
        im: (BigRational, BigRational),
    ) -> Result<AlgebraicNumber> {
        if minpoly.is_zero() || minpoly.deg() == 0 {
            return Err(Error::domain("minimal polynomial must have degree at least 1"));
        }
        if minpoly.deg() > MAX_CHECKED_DEGREE {
            return Err(Error::domain("minimal polynomial degree exceeds the checked cap"));
        }
        if !is_irreducible(minpoly)? {
            return Err(Error::domain(format!("{minpoly} is reducible")));
        }
        let f = minpoly.primitive_part();
        let prec = 64 + [&re.0, &re.1, &im.0, &im.1]
            .iter()
            .map(|q| q.numer().bits().max(q.denom().bits()))
            .max()
            .unwrap_or(0) as u32;
        let rect = ComplexBall::new(
            rational_interval(&re.0, &re.1, prec)?,
            rational_interval(&im.0, &im.1, prec)?,
        );
        let mut bits = BASE_BITS;
        loop {
            let rs = isolate_roots(&f, bits)?;
            let mut inside = None;
            let mut ambiguous = false;
            let mut count = 0;
            for r in &rs {
                if rect_contains(&re, &im, r) {
                    count += 1;
                    inside = Some(r.clone());
                } else if r.overlaps(&rect) {
                    ambiguous = true;
                }
            }
            if !ambiguous {
                if count != 1 {
                    return Err(Error::domain(format!(
                        "region contains {count} roots of the minimal polynomial"
                    )));
                }
                let z = inside.unwrap();
                return AlgebraicNumber::locate(f, None, move |_| Ok(z.clone()));
            }
            bits *= 2;
            if bits > MAX_LOCATE_BITS {
                return Err(Error::domain("region boundary passes through a root"));
            }
        }
    }
}

fn ball_endpoints(b: &Ball) -> (BigRational, BigRational) {
    let m = b.mid().to_rational();
    let r = Float::from_mag(b.rad()).to_rational();
    (&m - &r, &m + &r)
}

fn rational_interval(lo: &BigRational, hi: &BigRational, prec: u32) -> Result<Ball> {
    if lo > hi {
        return Err(Error::domain("empty interval"));
    }
    let a = Ball::from_rational(lo, prec);
    let b = Ball::from_rational(hi, prec);
    Ok(a.union(&b))
}

/// Whether box `r` lies inside the closed rational rectangle.
fn rect_contains(
    re: &(BigRational, BigRational),
    im: &(BigRational, BigRational),
    r: &ComplexBall,
) -> bool {
    let (a, b) = ball_endpoints(&r.re);
    let (c, d) = ball_endpoints(&r.im);
    a >= re.0 && b <= re.1 && c >= im.0 && d <= im.1
}

/// Values at `0..=n` of a degree-`n` polynomial to its coefficients.
fn interpolate(values: &[BigInt]) -> IntPolynomial {
    // Newton forward differences over the rationals
    let n = values.len();
    let mut diffs: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let mut coef = Vec::with_capacity(n);
    for k in 0..n {
        coef.push(diffs[0].clone());
        for i in 0..n - k - 1 {
            diffs[i] = (&diffs[i + 1] - &diffs[i]) / BigRational::from_integer(BigInt::from(k + 1));
        }
    }
    // sum coef[k] * x(x-1)...(x-k+1)
    let mut acc = RatPolynomial::zero();
    let mut basis = RatPolynomial::one();
    for (k, c) in coef.into_iter().enumerate() {
        acc = acc.add(&basis.scale(&c));
        basis = basis.mul(&RatPolynomial::new(vec![
            BigRational::from_integer(BigInt::from(-(k as i64))),
            BigRational::one(),
        ]));
    }
    let ints = acc
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "resultant interpolation is integral");
            c.to_integer()
        })
        .collect();
    IntPolynomial::new(ints)
}

/// `Res_y(f(y), g(x - y))`, whose roots are all sums of roots.
pub fn sum_resultant(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let n = f.deg() * g.deg();
    let h = g.negate_var();
    let values: Vec<BigInt> = (0..=n)
        .map(|c| resultant(f, &h.shift(&-BigInt::from(c))))
        .collect();
    interpolate(&values)
}

/// `Res_y(f(y), y^n g(x / y))`, whose roots are all products of roots.
pub fn product_resultant(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let n = f.deg() * g.deg();
    let dg = g.deg();
    let values: Vec<BigInt> = (0..=n)
        .map(|c| {
            let c = BigInt::from(c);
            let mut v = vec![BigInt::zero(); dg + 1];
            for i in 0..=dg {
                v[dg - i] = g.coeff(i) * c.pow(i as u32);
            }
            resultant(f, &IntPolynomial::new(v))
        })
        .collect();
    interpolate(&values)
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", rational_string(&q));
        }
        let (re, im) = self.region().mid_f64();
        write!(f, "root {} of {} (~ {re:.6}", self.index, self.minpoly)?;
        if !self.is_real() {
            write!(f, " {} {:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct RootRect {
    re: [String; 2],
    im: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct AlgebraicJson {
    minpoly: IntPolynomial,
    root: RootRect,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [re, im] = self.region_rational();
        AlgebraicJson {
            minpoly: self.minpoly.clone(),
            root: RootRect {
                re: [rational_string(&re.0), rational_string(&re.1)],
                im: [rational_string(&im.0), rational_string(&im.1)],
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
            Full(AlgebraicJson),
        }
        let j = match Repr::deserialize(d)? {
            Repr::Int(n) => return Ok(AlgebraicNumber::from_integer(n)),
            Repr::Str(s) => {
                return parse_rational(&s)
                    .map(|q| AlgebraicNumber::from_rational(&q))
                    .map_err(D::Error::custom)
            }
            Repr::Full(j) => j,
        };
        let p = |s: &String| parse_rational(s).map_err(D::Error::custom);
        let re = (p(&j.root.re[0])?, p(&j.root.re[1])?);
        let im = (p(&j.root.im[0])?, p(&j.root.im[1])?);
        AlgebraicNumber::from_region(&j.minpoly, re, im).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn root_of_orders_and_factors() {
        let s2 = AlgebraicNumber::root_of(&poly(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(s2.minpoly(), &poly(&[-2, 0, 1]));
        assert!(s2.region().re.is_positive());
        let m1 = AlgebraicNumber::root_of(&poly(&[-1, 0, 1]), 0).unwrap();
        assert_eq!(m1.to_rational(), Some(q(-1, 1)));
        assert!(AlgebraicNumber::root_of(&poly(&[-1, 0, 1]), 2).is_err());
        assert!(AlgebraicNumber::root_of(&poly(&[3]), 0).is_err());
    }

    #[test]
    fn sums_and_products() {
        let s2 = AlgebraicNumber::nth_root(&q(2, 1), 2).unwrap();
        let s3 = AlgebraicNumber::nth_root(&q(3, 1), 2).unwrap();
        let sum = s2.add(&s3).unwrap();
        assert_eq!(sum.minpoly(), &poly(&[1, 0, -10, 0, 1]));
        assert!(s2.add(&s2.neg()).unwrap().is_zero());
        let prod = s2.mul(&s3).unwrap();
        assert_eq!(prod.minpoly(), &poly(&[-6, 0, 1]));
        assert!(prod.region().re.is_positive());
        assert_eq!(s2.mul(&s2).unwrap().to_rational(), Some(q(2, 1)));
        let half = AlgebraicNumber::from_rational(&q(1, 2));
        let third = AlgebraicNumber::from_rational(&q(1, 3));
        assert_eq!(half.add(&third).unwrap().to_rational(), Some(q(5, 6)));
    }

    #[test]
    fn inverse_reverses() {
        let s2 = AlgebraicNumber::nth_root(&q(2, 1), 2).unwrap();
        assert_eq!(s2.inv().unwrap().minpoly(), &poly(&[-1, 0, 2]));
        let i = AlgebraicNumber::i();
        let two = AlgebraicNumber::from_integer(2);
        let a = two.sub(&i).unwrap().div(&two.add(&i).unwrap()).unwrap();
        assert_eq!(a.minpoly(), &poly(&[5, -6, 5]));
        let b = a.inv().unwrap();
        assert_eq!(b.minpoly(), &poly(&[5, -6, 5]));
        assert_ne!(a, b);
        assert_eq!(b, a.complex_conjugate());
        assert_eq!(AlgebraicNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn nth_root_degree_collapse() {
        assert_eq!(AlgebraicNumber::nth_root(&q(4, 1), 2).unwrap().to_rational(), Some(q(2, 1)));
        let r = AlgebraicNumber::nth_root(&q(8, 1), 6).unwrap();
        assert_eq!(r.minpoly(), &poly(&[-2, 0, 1]));
        let r = AlgebraicNumber::nth_root(&q(53, 1), 2).unwrap();
        assert!((r.region().mid_f64().0 - 7.2801).abs() < 1e-4);
        assert!(AlgebraicNumber::nth_root(&q(-1, 1), 2).is_err());
    }

    #[test]
    fn conjugates_on_unit_circle() {
        let a = AlgebraicNumber::root_of(&poly(&[5, -6, 5]), 0).unwrap();
        for z in a.conjugates(100).unwrap() {
            assert!(z.abs().contains_float(&Float::one()));
        }
        let r = AlgebraicNumber::from_rational(&q(3, 4));
        let c = r.conjugates(60).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].re.contains_rational(&q(3, 4)));
    }

    #[test]
    fn json_round_trip() {
        let a = AlgebraicNumber::root_of(&poly(&[-7, 0, 0, 1]), 0).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"minpoly\":[\"-7\",\"0\",\"0\",\"1\"]"));
        let b: AlgebraicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let r: AlgebraicNumber =
            serde_json::from_str(r#"{"minpoly":["-2","0","1"],"root":{"re":["1","2"],"im":["-1/2","1/2"]}}"#)
                .unwrap();
        assert!(r.region().re.is_positive());
        let bad = serde_json::from_str::<AlgebraicNumber>(
            r#"{"minpoly":["-2","0","1"],"root":{"re":["-2","2"],"im":["-1","1"]}}"#,
        );
        assert!(bad.is_err());
    }
}
