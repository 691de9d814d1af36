//! Identities `L x_j^t = sum_i g_ji f_i` with integer forms `g_ji`, found by
//! linear algebra in degree `t = (n+1)(D-1) + 1`, where the ideal of a
//! morphism contains every monomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

const MAX_UNKNOWNS: usize = 4000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullstellensatzCertificate {
    pub t: u32,
    #[serde(with = "crate::serde_util::bigint")]
    pub l: BigInt,
    /// `g[j][i]`, forms of degree `t - D`; serialized as term lists.
    #[serde(skip)]
    pub g: Vec<Vec<MultiPoly>>,
}

pub(crate) fn monomials(m: usize, deg: u32) -> Vec<Vec<u32>> {
    if m == 1 {
        return vec![vec![deg]];
    }
    let mut out = vec![];
    for a in (0..=deg).rev() {
        for mut rest in monomials(m - 1, deg - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

impl NullstellensatzCertificate {
    /// `None` exactly when the forms have a common zero.
    pub fn search(forms: &[MultiPoly], d: u32) -> Result<Option<NullstellensatzCertificate>> {
        let m = forms.len();
        let t = m as u32 * (d - 1) + 1;
        let rows = monomials(m, t);
        let mults = monomials(m, t - d);
        if mults.len() * m > MAX_UNKNOWNS {
            return Err(Error::resource("morphism certificate system too large"));
        }
        let index: HashMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let ncols = mults.len() * m;
        // augmented with one right-hand side per x_j^t
        let width = ncols + m;
        let mut a = vec![vec![BigRational::zero(); width]; rows.len()];
        for (i, f) in forms.iter().enumerate() {
            for (k, mu) in mults.iter().enumerate() {
                for (e, c) in f.terms() {
                    let s: Vec<u32> = e.iter().zip(mu).map(|(x, y)| x + y).collect();
                    a[index[&s]][i * mults.len() + k] += BigRational::from_integer(c.clone());
                }
            }
        }
        for j in 0..m {
            let mut e = vec![0; m];
            e[j] = t;
            a[index[&e]][ncols + j] = BigRational::one();
        }
        let pivots = rref(&mut a, ncols);
        // a zero row with a nonzero right-hand side means no solution
        for row in a.iter().skip(pivots.len()) {
            if row[ncols..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let mut l = BigInt::one();
        for row in a.iter().take(pivots.len()) {
            for x in &row[ncols..] {
                l = l.lcm(x.denom());
            }
        }
        let lq = BigRational::from_integer(l.clone());
        let g = (0..m)
            .map(|j| {
                (0..m)
                    .map(|i| {
                        let mut p = MultiPoly::zero(m);
                        for (r, &col) in pivots.iter().enumerate() {
                            if col / mults.len() == i {
                                let c = &a[r][ncols + j] * &lq;
                                p.add_term(mults[col % mults.len()].clone(), c.to_integer());
                            }
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let cert = NullstellensatzCertificate { t, l, g };
        debug_assert!(cert.verify(forms));
        Ok(Some(cert))
    }

    pub fn verify(&self, forms: &[MultiPoly]) -> bool {
        let m = forms.len();
        self.g.iter().enumerate().all(|(j, gs)| {
            let lhs = gs
                .iter()
                .zip(forms)
                .fold(MultiPoly::zero(m), |acc, (g, f)| acc.add(&g.mul(f)));
            let mut e = vec![0; m];
            e[j] = self.t;
            lhs == MultiPoly::from_terms(m, [(e, self.l.clone())])
        })
    }

    /// `max_j sum_i ||g_ji||_1`, so that `|L| <= C max_i |f_i(y)|` when
    /// `max_j |y_j| = 1`.
    pub fn c_bound(&self) -> BigInt {
        self.g
            .iter()
            .map(|gs| {
                gs.iter()
                    .flat_map(|g| g.terms().values().map(|c| c.abs()))
                    .sum::<BigInt>()
            })
            .max()
            .unwrap_or_default()
    }
}

/// Row reduction on the first `ncols` columns; returns pivot columns.
fn rref(a: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &k * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_resultant_identity() {
        let x = |i| MultiPoly::var(2, i);
        // f = (x^2 + y^2, 2 y^2)
        let fs = [x(0).pow(2).add(&x(1).pow(2)), x(1).pow(2).scale(&2.into())];
        let c = NullstellensatzCertificate::search(&fs, 2).unwrap().unwrap();
        assert_eq!(c.t, 3);
        assert!(c.verify(&fs));
        // x^3 = x (x^2 + y^2) - x/2 (2 y^2): L = 2
        assert_eq!(c.l, 2.into());
        assert_eq!(monomials(3, 2).len(), 6);
    }
}
