//! Norm certificates for joint-spectral-radius upper bounds. A hermitian
//! positive-definite gram matrix P on the degree-d symmetric power defines
//! L(z) = v_d(z)*·P·v_d(z); if γ^{2d}·P − L_j*·P·L_j ⪰ 0 for the lifted
//! operators L_j of every matrix in the set, then L(A_w z) ≤ γ^{2d|w|}L(z)
//! chains over words and two-sided ‖z‖^{2d} bounds from the spectrum of P
//! force jsr ≤ γ. Small constraint deficits are absorbed into a slightly
//! larger certified level rather than invalidating the certificate.

use super::lift::{lifted_dim, sym_lift};
use super::MatrixSet;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Mat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default iteration ceiling for the feasibility search.
pub const DEFAULT_CERT_ITERS: usize = 3000;

/// Positive-definite gram matrix certifying jsr ≤ (roughly) gamma.
///
/// `slacks[j]` is the smallest eigenvalue of γ^{2d}·P − L_j*·P·L_j with
/// L_j the unscaled lift; `certified_upper` turns any negative slack into
/// a rigorous, slightly larger level.
#[derive(Clone, Debug)]
pub struct NormCertificate {
    pub degree: u32,
    pub gamma: f64,
    pub gram: Mat,
    pub slacks: Vec<f64>,
    pub p_min: f64,
    pub p_max: f64,
}

impl NormCertificate {
    /// The level this certificate actually proves: with deficit
    /// s = max(0, −min slack), L_j*PL_j ⪯ γ^{2d}P + sI ⪯ (γ^{2d} + s/λ_min(P))P,
    /// so jsr ≤ γ·(1 + s/(λ_min(P)·γ^{2d}))^{1/2d}.
    pub fn certified_upper(&self) -> f64 {
        let two_d = self.degree as f64;
        let deficit = self
            .slacks
            .iter()
            .fold(0.0f64, |acc, &s| acc.max(-s));
        self.gamma
            * (1.0 + deficit / (self.p_min * self.gamma.powi(self.degree as i32)))
                .powf(1.0 / two_d)
    }

    pub fn to_json(&self) -> String {
        let dto = CertificateJson {
            schema_version: 1,
            degree: self.degree,
            gamma: self.gamma,
            gram: self.gram.data().iter().map(|c| [c.re, c.im]).collect(),
            slacks: self.slacks.clone(),
        };
        serde_json::to_string_pretty(&dto).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<NormCertificate> {
        let dto: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if dto.degree == 0 || dto.degree % 2 != 0 {
            return Err(Error::invalid("certificate", "degree must be even and positive"));
        }
        let nl = (dto.gram.len() as f64).sqrt().round() as usize;
        if nl * nl != dto.gram.len() {
            return Err(Error::invalid("certificate", "gram matrix is not square"));
        }
        let mut gram = Mat::zeros(nl, nl);
        for (k, [re, im]) in dto.gram.iter().enumerate() {
            gram[(k / nl, k % nl)] = Complex64::new(*re, *im);
        }
        let (pvals, _) = hermitian_eigen(&gram);
        Ok(NormCertificate {
            degree: dto.degree,
            gamma: dto.gamma,
            gram,
            slacks: dto.slacks,
            p_min: pvals.first().copied().unwrap_or(0.0),
            p_max: pvals.last().copied().unwrap_or(0.0),
        })
    }
}

/// On-disk form: row-major gram entries as [re, im] pairs.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    schema_version: u32,
    degree: u32,
    gamma: f64,
    gram: Vec<[f64; 2]>,
    slacks: Vec<f64>,
}

/// Outcome of re-checking a certificate from scratch against a matrix set.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub hermitian: bool,
    pub positive_definite: bool,
    pub p_min: f64,
    pub p_max: f64,
    pub slacks: Vec<f64>,
    pub certified_upper: f64,
}

fn herm(m: &Mat) -> Mat {
    m.hermitian_part()
}

fn proj_psd(m: &Mat, floor: f64) -> Mat {
    let (w, v) = hermitian_eigen(&herm(m));
    let n = m.rows();
    let mut d = Mat::zeros(n, n);
    for (i, &wi) in w.iter().enumerate() {
        d[(i, i)] = Complex64::new(wi.max(floor), 0.0);
    }
    v.mul(&d).mul(&v.adjoint())
}

fn min_eig(m: &Mat) -> f64 {
    let (w, _) = hermitian_eigen(&herm(m));
    w.first().copied().unwrap_or(0.0)
}

/// Searches for a feasible gram matrix at level γ and half-degree d by
/// alternating projections: clamp (P, γ^{-2d}-scaled constraint images)
/// onto the PSD cone, then project back onto the graph subspace by a
/// conjugate-gradient solve of the normal equations. Deterministic given
/// inputs and the iteration budget; exhaustion returns None, which is not
/// evidence that jsr > γ.
pub fn certify_upper_bound_with(
    set: &MatrixSet,
    gamma: f64,
    d: usize,
    iters: usize,
    lift_cap: usize,
) -> Result<Option<NormCertificate>> {
    if gamma <= 0.0 {
        return Err(Error::invalid("certificate level", "gamma must be positive"));
    }
    if d == 0 {
        return Err(Error::invalid("certificate half-degree", "must be at least 1"));
    }
    // Lifts of A_j/γ: feasibility of P − L*PL ⪰ 0 in this scaling is
    // exactly the unscaled condition γ^{2d}P − Lu*PLu ⪰ 0.
    let lifts: Vec<Mat> = set
        .matrices()
        .iter()
        .map(|a| sym_lift(&a.scale_re(1.0 / gamma), d, lift_cap))
        .collect::<Result<_>>()?;
    let nl = lifted_dim(set.dim(), d);
    let inner_tol = 1e-9;

    let constraint_images = |p: &Mat| -> Vec<Mat> {
        lifts
            .iter()
            .map(|l| p.sub(&l.adjoint().mul(p).mul(l)))
            .collect()
    };
    let adjoint_image = |y: &Mat, l: &Mat| -> Mat { y.sub(&l.mul(y).mul(&l.adjoint())) };
    let normal_op = |p: &Mat| -> Mat {
        let mut r = p.clone();
        for l in &lifts {
            let s = p.sub(&l.adjoint().mul(p).mul(l));
            r = r.add(&adjoint_image(&s, l));
        }
        r
    };
    let cg_solve = |rhs: &Mat, x0: &Mat| -> Mat {
        let mut x = x0.clone();
        let mut r = rhs.sub(&normal_op(&x));
        let mut pd = r.clone();
        let mut rs = r.frobenius_inner(&r);
        let stop = 1e-24 * (1.0 + rhs.frobenius_norm_sq());
        for _ in 0..200 {
            if rs < stop {
                break;
            }
            let ap = normal_op(&pd);
            let alpha = rs / pd.frobenius_inner(&ap);
            x = x.add(&pd.scale_re(alpha));
            r = r.sub(&ap.scale_re(alpha));
            let rs2 = r.frobenius_inner(&r);
            pd = r.add(&pd.scale_re(rs2 / rs));
            rs = rs2;
        }
        herm(&x)
    };

    let mut p = Mat::identity(nl);
    for _ in 0..iters {
        let y0 = proj_psd(&p, 1.0);
        let ys: Vec<Mat> = constraint_images(&p)
            .iter()
            .map(|s| proj_psd(s, 0.0))
            .collect();
        let mut rhs = y0;
        for (l, y) in lifts.iter().zip(&ys) {
            rhs = rhs.add(&adjoint_image(y, l));
        }
        p = cg_solve(&rhs, &p);

        let lam_p = min_eig(&p);
        let lam_s = constraint_images(&p)
            .iter()
            .map(min_eig)
            .fold(f64::INFINITY, f64::min);
        if lam_p >= 1.0 - 1e-9 && lam_s >= -inner_tol {
            let (pvals, _) = hermitian_eigen(&p);
            let g2d = gamma.powi(2 * d as i32);
            let slacks: Vec<f64> = constraint_images(&p)
                .iter()
                .map(|s| g2d * min_eig(s))
                .collect();
            return Ok(Some(NormCertificate {
                degree: 2 * d as u32,
                gamma,
                gram: p,
                slacks,
                p_min: pvals.first().copied().unwrap_or(0.0),
                p_max: pvals.last().copied().unwrap_or(0.0),
            }));
        }
    }
    Ok(None)
}

/// `certify_upper_bound_with` at the default iteration and lift budgets.
pub fn certify_upper_bound(
    set: &MatrixSet,
    gamma: f64,
    d: usize,
) -> Result<Option<NormCertificate>> {
    certify_upper_bound_with(set, gamma, d, DEFAULT_CERT_ITERS, super::lift::DEFAULT_LIFT_CAP)
}

/// Re-checks a certificate from scratch: rebuild the unscaled lifts,
/// re-measure the spectrum of the gram matrix and all constraint slacks,
/// and apply the margin tests (positive definiteness relative to λ_max(P),
/// slacks no worse than −1e-8 of the constraint scale). Shares no state
/// with the search.
pub fn verify_certificate(set: &MatrixSet, cert: &NormCertificate) -> Result<VerificationReport> {
    if cert.degree == 0 || cert.degree % 2 != 0 {
        return Err(Error::invalid("certificate", "degree must be even and positive"));
    }
    let d = cert.degree as usize / 2;
    let nl = lifted_dim(set.dim(), d);
    if cert.gram.rows() != nl || cert.gram.cols() != nl {
        return Err(Error::invalid(
            "certificate",
            format!("gram is {}×{}, lifted space has dimension {nl}", cert.gram.rows(), cert.gram.cols()),
        ));
    }
    if cert.gamma <= 0.0 {
        return Err(Error::invalid("certificate", "gamma must be positive"));
    }
    let hermitian =
        cert.gram.sub(&cert.gram.adjoint()).max_abs() <= 1e-10 * (1.0 + cert.gram.max_abs());
    let (pvals, _) = hermitian_eigen(&cert.gram);
    let p_min = pvals.first().copied().unwrap_or(0.0);
    let p_max = pvals.last().copied().unwrap_or(0.0);
    let positive_definite = p_min > 0.0 && p_min >= 1e-8 * p_max;

    let g2d = cert.gamma.powi(cert.degree as i32);
    let scale = g2d * p_max.max(1e-300);
    let mut slacks = Vec::with_capacity(set.len());
    let mut slack_ok = true;
    for a in set.matrices() {
        let l = sym_lift(a, d, nl)?;
        let s = cert
            .gram
            .scale_re(g2d)
            .sub(&l.adjoint().mul(&cert.gram).mul(&l));
        let lam = min_eig(&s);
        if lam < -1e-8 * scale {
            slack_ok = false;
        }
        slacks.push(lam);
    }
    let recomputed = NormCertificate {
        degree: cert.degree,
        gamma: cert.gamma,
        gram: cert.gram.clone(),
        slacks: slacks.clone(),
        p_min,
        p_max,
    };
    Ok(VerificationReport {
        pass: hermitian && positive_definite && slack_ok,
        hermitian,
        positive_definite,
        p_min,
        p_max,
        slacks,
        certified_upper: recomputed.certified_upper(),
    })
}
