//! Quasi-Monte-Carlo integration of `log|F(u, v)|` over `S^5 x S^5` with the
//! normalized invariant measure.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heights::QuadratureEstimate;
use crate::numeric::{Ball, Float, Mag};
use crate::poly::MultiPoly;

const BASES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
pub const ROTATIONS: usize = 8;
pub const MIN_NODES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QmcOptions {
    /// Total base nodes over all rotations. Each is evaluated twice
    /// (antithetic pair).
    pub nodes: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for QmcOptions {
    fn default() -> Self {
        QmcOptions {
            nodes: MIN_NODES,
            seed: 0,
            threads: 1,
        }
    }
}

fn radical_inverse(mut i: u64, b: u32) -> f64 {
    let inv = 1.0 / b as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % b as u64) as f64;
        i /= b as u64;
        f *= inv;
    }
    r
}

/// Point of `S^5` from four uniforms: `(|z0|^2, |z1|^2, |z2|^2)` is uniform
/// on the simplex, `z0` real (`log|F|` ignores a common phase).
fn sphere_point(a: f64, b: f64, p1: f64, p2: f64) -> [Complex64; 3] {
    let s = a.sqrt();
    let w0 = (1.0 - s).max(0.0);
    let w1 = s * (1.0 - b);
    let w2 = s * b;
    let tau = std::f64::consts::TAU;
    [
        Complex64::new(w0.sqrt(), 0.0),
        Complex64::from_polar(w1.sqrt(), tau * p1),
        Complex64::from_polar(w2.sqrt(), tau * p2),
    ]
}

/// Terms flattened for fast evaluation.
struct Compiled {
    terms: Vec<([u32; 6], f64)>,
    maxdeg: usize,
}

impl Compiled {
    fn new(f: &MultiPoly) -> Compiled {
        let scale = crate::poly::int::bigint_to_f64(&f.max_abs_coeff());
        let terms: Vec<([u32; 6], f64)> = f
            .terms()
            .iter()
            .map(|(e, c)| {
                let mut a = [0u32; 6];
                a.copy_from_slice(e);
                (a, crate::poly::int::bigint_to_f64(c) / scale)
            })
            .collect();
        let maxdeg = terms.iter().flat_map(|t| t.0).max().unwrap_or(0) as usize;
        Compiled { terms, maxdeg }
    }

    fn log_abs(&self, x: &[Complex64; 6], pw: &mut [Vec<Complex64>; 6]) -> f64 {
        for (k, p) in pw.iter_mut().enumerate() {
            p[0] = Complex64::new(1.0, 0.0);
            for e in 1..=self.maxdeg {
                p[e] = p[e - 1] * x[k];
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for k in 0..6 {
                t *= pw[k][e[k] as usize];
            }
            acc += t;
        }
        acc.norm().max(1e-300).ln()
    }
}

fn rotation_mean(f: &Compiled, shift: &[f64; 8], start: u64, count: u64) -> f64 {
    let mut pw: [Vec<Complex64>; 6] =
        std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); f.maxdeg + 1]);
    let mut sum = 0.0;
    for i in start..start + count {
        let mut x = [0.0; 8];
        for k in 0..8 {
            x[k] = (radical_inverse(i + 1, BASES[k]) + shift[k]).fract();
        }
        for anti in [false, true] {
            let y: [f64; 8] = if anti { x.map(|t| 1.0 - t) } else { x };
            let u = sphere_point(y[0], y[1], y[2], y[3]);
            let v = sphere_point(y[4], y[5], y[6], y[7]);
            sum += f.log_abs(&[u[0], u[1], u[2], v[0], v[1], v[2]], &mut pw);
        }
    }
    sum / (2 * count) as f64
}

/// `integral log|F| d(sigma x sigma)` for a form in two blocks of three
/// variables. The estimate is the mean over [`ROTATIONS`] random shifts of
/// one Halton sequence; the radius is three times the half-range of the
/// shift means.
pub fn log_integral_s5_pair(f: &MultiPoly, opts: &QmcOptions) -> Result<QuadratureEstimate> {
    if f.nvars() != 6 || f.is_zero() {
        return Err(Error::domain("QMC integrand must be a nonzero form in 6 variables"));
    }
    let per = (opts.nodes.max(ROTATIONS) / ROTATIONS) as u64;
    let comp = Compiled::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let shifts: Vec<[f64; 8]> = (0..ROTATIONS)
        .map(|_| std::array::from_fn(|_| rng.gen::<f64>()))
        .collect();
    let means = run_shards(&comp, &shifts, per, opts.threads);
    let lo = means.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = means.iter().sum::<f64>() / means.len() as f64;
    let log_scale = crate::numeric::elementary::ln_bigint(&f.max_abs_coeff(), 64).mid_f64();
    let rad = Mag::from_f64_up(1.5 * (hi - lo) + 1e-12 * (1.0 + log_scale.abs()));
    Ok(QuadratureEstimate {
        value: Ball::new(Float::from_f64(mean + log_scale), rad, 64),
        rigorous: false,
        method: format!("halton8 x {ROTATIONS} shifts, antithetic, {} nodes", per * ROTATIONS as u64),
        subintervals: (per * ROTATIONS as u64) as usize,
    })
}

#[cfg(feature = "parallel")]
fn run_shards(f: &Compiled, shifts: &[[f64; 8]], per: u64, threads: usize) -> Vec<f64> {
    use rayon::prelude::*;
    if threads <= 1 {
        return shifts.iter().map(|s| rotation_mean(f, s, 0, per)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
    match pool {
        Ok(p) => p.install(|| shifts.par_iter().map(|s| rotation_mean(f, s, 0, per)).collect()),
        Err(_) => shifts.iter().map(|s| rotation_mean(f, s, 0, per)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_shards(f: &Compiled, shifts: &[[f64; 8]], per: u64, _threads: usize) -> Vec<f64> {
    shifts.iter().map(|s| rotation_mean(f, s, 0, per)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_block() {
        // log|u0| has mean -c(2) = -3/4 on S^5
        let f = MultiPoly::var(6, 0).mul(&MultiPoly::var(6, 3));
        let opts = QmcOptions {
            nodes: 1 << 14,
            ..Default::default()
        };
        let est = log_integral_s5_pair(&f, &opts).unwrap();
        assert!((est.value.mid_f64() + 1.5).abs() < 5e-3, "{}", est.value.mid_f64());
    }
}
