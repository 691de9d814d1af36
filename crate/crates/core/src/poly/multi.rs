//! Sparse multivariate polynomials with integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{Ball, ComplexBall};

/// Terms keyed by exponent vectors of a fixed length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, BigInt::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[BigInt]) -> MultiPoly {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Degree in each variable separately.
    pub fn partial_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (di, ei) in d.iter_mut().zip(e) {
                *di = (*di).max(*ei);
            }
        }
        d
    }

    /// Total degree of each block of consecutive variables.
    pub fn block_degrees(&self, block: usize) -> Vec<u32> {
        let nb = self.nvars / block;
        let mut d = vec![0; nb];
        for e in self.terms.keys() {
            for (b, db) in d.iter_mut().enumerate() {
                let s: u32 = e[b * block..(b + 1) * block].iter().sum();
                *db = (*db).max(s);
            }
        }
        d
    }

    /// Whether every term has the same degree in each block.
    pub fn is_multihomogeneous(&self, block: usize) -> bool {
        let nb = self.nvars / block;
        let mut first: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            let ds: Vec<u32> = (0..nb)
                .map(|b| e[b * block..(b + 1) * block].iter().sum())
                .collect();
            match &first {
                None => first = Some(ds),
                Some(f) if *f != ds => return false,
                _ => {}
            }
        }
        true
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    /// Content removed and the graded-lex leading coefficient made positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().1.is_negative() {
            g = -g;
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c / &g)).collect(),
        }
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, ei) in x.iter().zip(e) {
                if *ei > 0 {
                    t *= xi.pow(*ei);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, z: &[ComplexBall]) -> ComplexBall {
        let prec = z.first().map(|b| b.prec()).unwrap_or(64);
        let mut acc = ComplexBall::zero(prec);
        for (e, c) in &self.terms {
            let mut t = ComplexBall::real(Ball::from_bigint(c, prec));
            for (zi, ei) in z.iter().zip(e) {
                if *ei > 0 {
                    t = t.mul(&zi.pow_u64(*ei as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_f64(&self, x: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = (super::int::bigint_to_f64(c), 0.0);
            for (xi, ei) in x.iter().zip(e) {
                for _ in 0..*ei {
                    t = (t.0 * xi.0 - t.1 * xi.1, t.0 * xi.1 + t.1 * xi.0);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    /// Substitutes polynomials for every variable.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let m = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut acc = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone());
            for (s, ei) in subs.iter().zip(e) {
                if *ei > 0 {
                    t = t.mul(&s.pow(*ei));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Widens the variable set: variable `i` becomes variable `map[i]` of `m`.
    pub fn embed(&self, m: usize, map: &[usize]) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; m];
            for (i, ei) in e.iter().enumerate() {
                ne[map[i]] += ei;
            }
            (ne, c.clone())
        });
        MultiPoly::from_terms(m, terms)
    }

    /// Exact quotient when `o` divides `self`; multivariate long division by
    /// the lexicographic leading term.
    pub fn div_exact(&self, o: &MultiPoly) -> Option<MultiPoly> {
        if o.is_zero() {
            return None;
        }
        let (lo_e, lo_c) = o.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lo_e).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = c.div_rem(&lo_c);
            if !rem.is_zero() {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&lo_e).map(|(a, b)| a - b).collect();
            let mono = MultiPoly::from_terms(self.nvars, [(qe, qc)]);
            r = r.sub(&mono.mul(o));
            q = q.add(&mono);
        }
        Some(q)
    }
}

/// Determinant of a square matrix of polynomials by expansion over column
/// subsets (no divisions): cost `2^n n` products.
pub fn det_multi(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nvars = m
        .first()
        .and_then(|r| r.first())
        .map(|p| p.nvars())
        .unwrap_or(0);
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    // dp[mask] = sum over assignments of the first popcount(mask) rows to the
    // columns in mask, with sign
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::one(nvars));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || m[row][col].is_zero() {
                continue;
            }
            // sign from the number of chosen columns to the right of `col`
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = cur.mul(&m[row][col]);
            if inversions % 2 == 1 {
                term = term.neg();
            }
            let next = mask | (1 << col);
            dp[next] = Some(match dp[next].take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| MultiPoly::zero(nvars))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn product_and_content() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = x.add(&y.scale(&b(2))).mul(&x.add(&y.scale(&b(3))));
        assert_eq!(f.coeff(&[1, 1]), b(5));
        assert_eq!(f.coeff(&[0, 2]), b(6));
        assert_eq!(f.scale(&b(-4)).primitive_part(), f);
        assert_eq!(f.div_exact(&x.add(&y.scale(&b(2)))).unwrap(), x.add(&y.scale(&b(3))));
    }

    #[test]
    fn determinant_matches_bareiss() {
        let c = |v: i64| MultiPoly::constant(1, b(v));
        let m = vec![
            vec![c(2), c(-1), c(0)],
            vec![c(-1), c(2), c(-1)],
            vec![c(0), c(-1), c(2)],
        ];
        assert_eq!(det_multi(&m), c(4));
    }

    #[test]
    fn symbolic_determinant() {
        // det [[u0, 2u1], [u1, u0]] = u0^2 - 2u1^2
        let u0 = MultiPoly::var(2, 0);
        let u1 = MultiPoly::var(2, 1);
        let m = vec![vec![u0.clone(), u1.scale(&b(2))], vec![u1.clone(), u0.clone()]];
        let d = det_multi(&m);
        assert_eq!(d, u0.pow(2).sub(&u1.pow(2).scale(&b(2))));
    }
}
