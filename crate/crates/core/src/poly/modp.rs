//! Polynomials over a prime field `F_p` with `p < 2^31`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::int::IntPolynomial;

/// Lowest degree first, trimmed.
pub type ModPoly = Vec<u64>;

pub fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &ModPoly) -> usize {
    a.len().saturating_sub(1)
}

pub fn reduce(f: &IntPolynomial, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn add(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    trim(v)
}

pub fn scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        None => vec![],
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub fn div_rem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    div_rem(a, b, p).1
}

pub fn gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub fn xgcd(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().unwrap_or(&1), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

pub fn mul_mod(a: &ModPoly, b: &ModPoly, m: &ModPoly, p: u64) -> ModPoly {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub fn pow_poly_mod(base: &ModPoly, mut e: u128, m: &ModPoly, p: u64) -> ModPoly {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, m, p);
        }
    }
    r
}

pub fn is_squarefree(a: &ModPoly, p: u64) -> bool {
    deg(&gcd(a, &derivative(a, p), p)) == 0
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = pow_poly_mod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if deg(&g) > 0 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let df = deg(&f);
        out.push((f, df));
    }
    out
}

/// Splits a monic product of irreducibles of degree `d` (Cantor-Zassenhaus).
pub fn equal_degree<R: Rng>(f: &ModPoly, d: usize, p: u64, rng: &mut R) -> Vec<ModPoly> {
    if deg(f) == d {
        return vec![f.clone()];
    }
    let n = deg(f);
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let g = gcd(&a, f, p);
        if deg(&g) > 0 && deg(&g) < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&div_rem(f, &g, p).0, d, p, rng));
            return out;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2)
        let mut c = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            c = pow_poly_mod(&c, p as u128, f, p);
            norm = mul_mod(&norm, &c, f, p);
        }
        let b = pow_poly_mod(&norm, ((p - 1) / 2) as u128, f, p);
        let g = gcd(&sub(&b, &vec![1], p), f, p);
        if deg(&g) > 0 && deg(&g) < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&div_rem(f, &g, p).0, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles of a squarefree polynomial
/// (odd `p`), sorted for determinism.
pub fn factor_squarefree<R: Rng>(f: &ModPoly, p: u64, rng: &mut R) -> Vec<ModPoly> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

/// Multiset of factor degrees of a squarefree polynomial.
pub fn degree_pattern(f: &ModPoly, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&monic(f, p), p) {
        for _ in 0..deg(&g) / d {
            out.push(d);
        }
    }
    out.sort();
    out
}

/// Small primes for reductions, skipping 2.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}
