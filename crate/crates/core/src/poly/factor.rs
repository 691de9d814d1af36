//! Factorization over the integers: squarefree decomposition, factorization
//! modulo a good prime, Hensel lifting and recombination of lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::int::IntPolynomial;
use super::modp::{self, ModPoly};
use crate::error::{Error, Result};

/// Largest degree of a squarefree part accepted by [`factor`].
pub const MAX_FACTOR_DEGREE: usize = 64;

/// Recombination subsets tried before giving up.
const MAX_SUBSETS: u64 = 2_000_000;

/// `f = content * prod g_i^{e_i}` with primitive irreducible `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::serde_util::bigint")]
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(&g.pow(*e as u32));
        }
        acc
    }
}

/// Factors a nonzero integer polynomial.
pub fn factor(f: &IntPolynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let pp = f.primitive_part();
    let content = f.lc().signum() * f.content();
    let mut factors = Vec::new();
    for (g, e) in pp.squarefree_decomposition() {
        for h in factor_squarefree(&g)? {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), &a.0).cmp(&(b.0.deg(), &b.0)));
    Ok(Factorization { content, factors })
}

/// Distinct irreducible factors of `f`, primitive and sorted.
pub fn irreducible_factors(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    Ok(factor(f)?.factors.into_iter().map(|(g, _)| g).collect())
}

/// Whether a nonconstant polynomial is irreducible over the rationals.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    if f.deg() == 0 {
        return Ok(false);
    }
    let fac = factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Factors a primitive squarefree polynomial with positive leading coefficient.
pub fn factor_squarefree(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.primitive_part()]);
    }
    if n > MAX_FACTOR_DEGREE {
        return Err(Error::resource(format!(
            "factorization is capped at degree {MAX_FACTOR_DEGREE}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut f = f.primitive_part();
    if f.coeff(0).is_zero() {
        out.push(IntPolynomial::x());
        f = f.div_exact(&IntPolynomial::x()).unwrap();
        if f.deg() == 0 {
            return Ok(out);
        }
    }
    if f.deg() == 1 {
        out.push(f);
        out.sort();
        return Ok(out);
    }
    let reduction = choose_prime(&f);
    let mut rest = match reduction {
        Reduction::Irreducible => vec![f],
        Reduction::Prime { p, allowed } => zassenhaus(&f, p, &allowed)?,
    };
    out.append(&mut rest);
    out.sort_by(|a, b| (a.deg(), a).cmp(&(b.deg(), b)));
    Ok(out)
}

enum Reduction {
    Irreducible,
    Prime { p: u64, allowed: Vec<bool> },
}

/// Tries several primes; the degree patterns restrict which factor degrees
/// are possible, and the prime with the fewest modular factors is returned.
fn choose_prime(f: &IntPolynomial) -> Reduction {
    let n = f.deg();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(usize, u64)> = None;
    let mut usable = 0;
    for p in modp::odd_primes().take(80) {
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::reduce(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let pattern = modp::degree_pattern(&fp, p);
        let sums = subset_sums(&pattern, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if (1..n).all(|d| !allowed[d]) {
            return Reduction::Irreducible;
        }
        if best.is_none_or(|(k, _)| pattern.len() < k) {
            best = Some((pattern.len(), p));
        }
        usable += 1;
        if usable >= 6 {
            break;
        }
    }
    let (_, p) = best.expect("some prime keeps a squarefree polynomial squarefree");
    Reduction::Prime { p, allowed }
}

fn subset_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in pattern {
        for i in (d..=n).rev() {
            if s[i - d] {
                s[i] = true;
            }
        }
    }
    s
}

fn zassenhaus(f: &IntPolynomial, p: u64, allowed: &[bool]) -> Result<Vec<IntPolynomial>> {
    let n = f.deg();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let fp = modp::reduce(f, p);
    let mod_factors = modp::factor_squarefree(&fp, p, &mut rng);
    if mod_factors.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // coefficients of lc(f) * g for any factor g are below lc * 2^n * |f|_2
    let norm = f.l2_norm_sq().sqrt() + 1;
    let bound = f.lc().abs() * (BigInt::one() << n) * norm * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = lift_tree(f.coeffs(), &mod_factors, p, k);
    recombine(f, lifted, &pk, allowed, n)
}

fn recombine(
    f: &IntPolynomial,
    mut pool: Vec<Vec<BigInt>>,
    pk: &BigInt,
    allowed: &[bool],
    n: usize,
) -> Result<Vec<IntPolynomial>> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    let mut size = 1;
    let mut tried = 0u64;
    'outer: while 2 * size <= pool.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let d: usize = idx.iter().map(|&i| pool[i].len() - 1).sum();
            if allowed_degree(allowed, d, n) {
                tried += 1;
                if tried > MAX_SUBSETS {
                    return Err(Error::resource("factor recombination exceeded its subset budget"));
                }
                let mut g = vec![cur.lc()];
                for &i in &idx {
                    g = mul_mod(&g, &pool[i], pk);
                }
                let cand = IntPolynomial::new(g.iter().map(|c| sym_mod(c, pk)).collect())
                    .primitive_part();
                if let Some(q) = cur.div_exact(&cand) {
                    out.push(cand);
                    cur = q;
                    for &i in idx.iter().rev() {
                        pool.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    out.push(cur.primitive_part());
    Ok(out)
}

fn allowed_degree(allowed: &[bool], d: usize, n: usize) -> bool {
    // the sieve was computed for the original degree; complements stay valid
    d < allowed.len() && allowed[d] && n >= d
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

type BigPoly = Vec<BigInt>;

fn trim_big(mut a: BigPoly) -> BigPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn reduce_big(a: &[BigInt], m: &BigInt) -> BigPoly {
    trim_big(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_big(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_big(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> BigPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    reduce_big(&v, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (BigPoly, BigPoly) {
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim_big(q), reduce_big(&r, m))
}

fn to_big(a: &ModPoly) -> BigPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` mod `m` to the
/// same relations mod `m^2` (`h` monic).
fn hensel_step(
    f: &[BigInt],
    g: &BigPoly,
    h: &BigPoly,
    s: &BigPoly,
    t: &BigPoly,
    m: &BigInt,
) -> (BigPoly, BigPoly, BigPoly, BigPoly) {
    let m2 = m * m;
    let e = sub_mod(f, &mul_mod(g, h, &m2), &m2);
    let (q, r) = div_rem_monic(&mul_mod(s, &e, &m2), h, &m2);
    let g2 = add_mod(&add_mod(g, &mul_mod(t, &e, &m2), &m2), &mul_mod(&q, g, &m2), &m2);
    let h2 = add_mod(h, &r, &m2);
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g2, &m2), &mul_mod(t, &h2, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = div_rem_monic(&mul_mod(s, &b, &m2), &h2, &m2);
    let s2 = sub_mod(s, &d, &m2);
    let t2 = sub_mod(&sub_mod(t, &mul_mod(t, &b, &m2), &m2), &mul_mod(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factors of `f` to monic factors mod `p^k`.
fn lift_tree(f: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<BigPoly> {
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = inv_mod_big(lc, &pk);
        let g: BigPoly = f.iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
        return vec![trim_big(g)];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let lc_p = f.last().unwrap().mod_floor(&pb).to_u64().unwrap();
    let g0 = left
        .iter()
        .fold(vec![lc_p], |acc, u| modp::mul(&acc, u, p));
    let h0 = right.iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (one, s0, t0) = modp::xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = pb.clone();
    let mut e = 1u32;
    while e < k {
        let fm = reduce_big(f, &(&m * &m));
        let next = hensel_step(&fm, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
        e *= 2;
    }
    let g = reduce_big(&g, &pk);
    let h = reduce_big(&h, &pk);
    let mut out = lift_tree(&g, left, p, k);
    out.extend(lift_tree(&h, right, p, k));
    out
}

/// Whether `f` has a factor of degree exactly `k`, by Kronecker's method:
/// candidate factors are interpolated from divisors of the values of `f` at
/// small integers. Exponential; intended as an independent check for small
/// degrees and coefficients.
pub fn kronecker_has_factor(f: &IntPolynomial, k: usize) -> Option<bool> {
    let f = f.primitive_part();
    if k == 0 || k >= f.deg() {
        return Some(false);
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut x = 0i64;
    while points.len() <= k {
        let v = f.eval(&BigInt::from(x));
        if v.is_zero() {
            return Some(true);
        }
        let divs = all_divisors(&v)?;
        points.push(x);
        values.push(divs);
        x = if x <= 0 { 1 - x } else { -x };
    }
    let mut choice = vec![0usize; k + 1];
    loop {
        let ys: Vec<BigInt> = (0..=k).map(|i| values[i][choice[i]].clone()).collect();
        if let Some(g) = interpolate_integer(&points, &ys) {
            if g.deg() == k && f.div_exact(&g).is_some() {
                return Some(true);
            }
        }
        let mut i = 0;
        loop {
            if i > k {
                return Some(false);
            }
            choice[i] += 1;
            if choice[i] < values[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn all_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let n = v.abs().to_u64()?;
    if n > 1 << 32 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            for e in [d, n / d] {
                let b = BigInt::from(e);
                if !out.contains(&b) {
                    out.push(b.clone());
                    out.push(-b);
                }
            }
        }
        d += 1;
    }
    Some(out)
}

/// Lagrange interpolation; `None` unless the result has integer coefficients.
fn interpolate_integer(xs: &[i64], ys: &[BigInt]) -> Option<IntPolynomial> {
    use num_rational::BigRational;
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(BigInt::from(xs[j]));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn factors_product_of_quadratics() {
        let a = p(&[-2, 0, 1]);
        let b = p(&[1, 1, 1]);
        let c = p(&[3, 0, 0, 1]);
        let f = a.mul(&b).mul(&c).scale(&BigInt::from(-6));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.content, BigInt::from(-6));
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 splits into quadratics or linears mod every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn cyclotomic_factorization() {
        // x^12 - 1 = prod of Phi_d for d | 12
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fs = irreducible_factors(&f).unwrap();
        assert_eq!(fs.len(), 6);
        let degs: Vec<usize> = fs.iter().map(|g| g.deg()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn repeated_factors() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 0, 1]).pow(2));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 3), (p(&[2, 0, 1]), 2)]);
    }

    #[test]
    fn non_monic_lift() {
        let a = p(&[3, 5, 7]);
        let b = p(&[-11, 0, 0, 2]);
        let d = p(&[1, -4, 6, -4, 9]);
        let f = a.mul(&b).mul(&d);
        let fs = irreducible_factors(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&a) && fs.contains(&b) && fs.contains(&d));
    }

    #[test]
    fn kronecker_agrees() {
        assert_eq!(kronecker_has_factor(&p(&[1, 0, -10, 0, 1]), 2), Some(false));
        assert_eq!(kronecker_has_factor(&p(&[-1, 0, 0, 0, 1]), 2), Some(true));
    }
}
