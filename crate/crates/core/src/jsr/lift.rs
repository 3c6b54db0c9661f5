//! Symmetric tensor power lifts. A linear map A on ℂ^n induces a map on
//! the d-fold symmetric power; in the normalized monomial basis
//! m_α = √(d!/α!)·z^α that induced map acts on the coefficient vector of a
//! degree-d form, the squared norm of the lifted vector of z equals
//! ‖z‖^{2d}, and lifting is multiplicative. Degree-2d norm certificates are
//! quadratic forms in these lifted coordinates.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use num_complex::Complex64;
use std::collections::HashMap;

/// Default ceiling on the lifted dimension binom(n+d−1, d).
pub const DEFAULT_LIFT_CAP: usize = 1024;

/// Exponent vectors α ∈ ℕ^n with |α| = d, first coordinate descending.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(n - 1, d - first, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut out, &mut Vec::new());
    out
}

/// binom(n+d−1, d): the dimension of the degree-d symmetric power of ℂ^n.
pub fn lifted_dim(n: usize, d: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (n + i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

fn factorial_f(k: usize) -> f64 {
    (1..=k as u128).product::<u128>() as f64
}

fn multinomial_f(d: usize, alpha: &[usize]) -> f64 {
    alpha
        .iter()
        .fold(factorial_f(d), |acc, &a| acc / factorial_f(a))
}

/// The lifted vector v_d(z), entry √(d!/α!)·z^α at monomial α. Satisfies
/// ‖v_d(z)‖² = ‖z‖^{2d} and v_d(Az) = sym_lift(A, d)·v_d(z).
pub fn lifted_vec(z: &[Complex64], d: usize) -> Vec<Complex64> {
    monomials(z.len(), d)
        .iter()
        .map(|alpha| {
            let mut v = Complex64::new(multinomial_f(d, alpha).sqrt(), 0.0);
            for (i, &a) in alpha.iter().enumerate() {
                v *= z[i].powu(a as u32);
            }
            v
        })
        .collect()
}

/// Matrix of the map induced by A on the degree-d symmetric power, in the
/// normalized monomial basis. Row β holds the expansion of
/// Π_i (Σ_j A[i,j]·z_j)^{β_i} scaled by √(α!/β!) per column α.
pub fn sym_lift(a: &Mat, d: usize, cap: usize) -> Result<Mat> {
    let n = a.rows();
    let nl = lifted_dim(n, d);
    if nl > cap {
        return Err(Error::CapExceeded {
            what: "lifted dimension",
            requested: nl as u128,
            cap: cap as u128,
        });
    }
    let mons = monomials(n, d);
    let index: HashMap<&[usize], usize> = mons
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut l = Mat::zeros(nl, nl);
    for (bi, beta) in mons.iter().enumerate() {
        let mut poly: HashMap<Vec<usize>, Complex64> = HashMap::new();
        poly.insert(vec![0; n], Complex64::new(1.0, 0.0));
        for i in 0..n {
            for _ in 0..beta[i] {
                let mut next: HashMap<Vec<usize>, Complex64> = HashMap::new();
                for (mono, c) in &poly {
                    for j in 0..n {
                        let aij = a[(i, j)];
                        if aij.norm_sqr() == 0.0 {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2[j] += 1;
                        *next.entry(m2).or_insert(Complex64::new(0.0, 0.0)) += c * aij;
                    }
                }
                poly = next;
            }
        }
        let fb = factorial_f(d) / multinomial_f(d, beta);
        for (alpha, c) in poly {
            let fa = factorial_f(d) / multinomial_f(d, &alpha);
            l[(bi, index[alpha.as_slice()])] += c * (fa / fb).sqrt();
        }
    }
    Ok(l)
}
