//! Joint spectral radius (jsr) estimation for finite sets of complex
//! matrices: Gelfand-type lower bounds from products, certified upper
//! bounds from positive-definite norm certificates on symmetric tensor
//! powers, a bisection driver combining the two, and the Fourier jsr of a
//! family of step distributions relative to a homogeneous space — the
//! quantity that decides whether every switched walk mixes.

mod certify;
mod lift;
mod lower;

pub use certify::{
    certify_upper_bound, certify_upper_bound_with, verify_certificate, NormCertificate,
    VerificationReport, DEFAULT_CERT_ITERS,
};
pub use lift::{lifted_dim, lifted_vec, monomials, sym_lift, DEFAULT_LIFT_CAP};
pub use lower::{jsr_lower_bound, DEFAULT_PRODUCT_BUDGET};

use crate::error::{Error, Result};
use crate::fourier::{class_scalar, fourier_transform, slow_switching_pair, GroupDistribution};
use crate::linalg::{op_norm, spectral_radius_of, Mat};
use crate::space::SpaceKind;
use crate::symrep::partition::Partition;
use crate::symrep::yor::{OrthogonalRepresentation, DEFAULT_IRREP_DIM_CAP};
use crate::walks::module_multiplicities;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A finite family of square complex matrices of one common dimension.
#[derive(Clone, Debug)]
pub struct MatrixSet {
    dim: usize,
    matrices: Vec<Mat>,
}

impl MatrixSet {
    pub fn new(matrices: Vec<Mat>) -> Result<MatrixSet> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::invalid("matrix set", "must contain at least one matrix"))?;
        if !first.is_square() {
            return Err(Error::invalid("matrix set", "matrices must be square"));
        }
        let dim = first.rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::invalid("matrix set", "matrices must share one dimension"));
        }
        Ok(MatrixSet { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn to_json(&self) -> String {
        let dto = MatrixSetJson {
            schema_version: 1,
            dim: self.dim,
            matrices: self
                .matrices
                .iter()
                .map(|m| m.data().iter().map(|c| [c.re, c.im]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("matrix set serializes")
    }

    pub fn from_json(text: &str) -> Result<MatrixSet> {
        let dto: MatrixSetJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut matrices = Vec::with_capacity(dto.matrices.len());
        for entries in &dto.matrices {
            if entries.len() != dto.dim * dto.dim {
                return Err(Error::invalid(
                    "matrix set",
                    format!("matrix has {} entries, want {}", entries.len(), dto.dim * dto.dim),
                ));
            }
            let mut m = Mat::zeros(dto.dim, dto.dim);
            for (k, [re, im]) in entries.iter().enumerate() {
                m[(k / dto.dim, k % dto.dim)] = Complex64::new(*re, *im);
            }
            matrices.push(m);
        }
        MatrixSet::new(matrices)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSetJson {
    schema_version: u32,
    dim: usize,
    matrices: Vec<Vec<[f64; 2]>>,
}

/// Two-sided jsr estimate: `lower` from product spectral radii, `upper`
/// from the initial operator-norm bound improved by any certificates found.
#[derive(Clone, Debug)]
pub struct JsrEstimate {
    pub lower: f64,
    pub upper: f64,
    pub depth: usize,
    pub certificate: Option<NormCertificate>,
}

/// Resource ceilings for `jsr_estimate_with`.
#[derive(Clone, Debug)]
pub struct JsrBudgets {
    pub depth: usize,
    pub product_budget: u64,
    pub cert_iters: usize,
    pub max_probes: usize,
    pub lift_cap: usize,
}

impl Default for JsrBudgets {
    fn default() -> Self {
        JsrBudgets {
            depth: 8,
            product_budget: DEFAULT_PRODUCT_BUDGET,
            cert_iters: DEFAULT_CERT_ITERS,
            max_probes: 24,
            lift_cap: DEFAULT_LIFT_CAP,
        }
    }
}

/// Magnitude of the largest eigenvalue; complex-conjugate dominant pairs
/// are handled by the underlying QR iteration.
pub fn spectral_radius(a: &Mat) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::invalid("spectral radius", "matrix must be square"));
    }
    Ok(spectral_radius_of(a))
}

/// Brackets the jsr: Gelfand lower bound within budget, then bisection on
/// the certified side with degrees escalating through d = 1, 2, 3 at each
/// probe. Failed probes raise the bisection floor without touching the
/// certified lower bound (infeasibility within an iteration budget proves
/// nothing). Budget exhaustion widens the interval; it never fails.
pub fn jsr_estimate_with(set: &MatrixSet, tol: f64, budgets: &JsrBudgets) -> JsrEstimate {
    let upper0 = set
        .matrices()
        .iter()
        .map(op_norm)
        .fold(0.0f64, f64::max);
    if upper0 == 0.0 {
        return JsrEstimate {
            lower: 0.0,
            upper: 0.0,
            depth: 1,
            certificate: None,
        };
    }
    let outcome = lower::gelfand_search(set, budgets.depth, budgets.product_budget);
    let lower = outcome.best;

    let mut hi = upper0;
    let mut floor = lower.max(0.0);
    let mut certificate = None;
    let mut probes = 0;
    while hi - floor > tol && probes < budgets.max_probes {
        let gamma = 0.5 * (hi + floor);
        let mut feasible = false;
        for d in 1..=3 {
            let found = certify_upper_bound_with(set, gamma, d, budgets.cert_iters, budgets.lift_cap)
                .unwrap_or(None);
            if let Some(cert) = found {
                hi = hi.min(cert.certified_upper());
                certificate = Some(cert);
                feasible = true;
                break;
            }
        }
        if !feasible {
            floor = gamma;
        }
        probes += 1;
    }
    JsrEstimate {
        lower,
        upper: hi,
        depth: outcome.reached_depth.max(1),
        certificate,
    }
}

/// `jsr_estimate_with` at default budgets.
pub fn jsr_estimate(set: &MatrixSet, tol: f64) -> JsrEstimate {
    jsr_estimate_with(set, tol, &JsrBudgets::default())
}

/// Verdict on adversarial mixing: every switched walk mixes exactly when
/// the Fourier jsr is below one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MixVerdict {
    #[serde(rename = "mixes")]
    Mixes,
    #[serde(rename = "does not mix")]
    DoesNotMix,
    #[serde(rename = "undetermined")]
    Undetermined,
}

/// Per-irreducible and overall Fourier jsr of a distribution family
/// relative to a homogeneous space.
#[derive(Clone, Debug)]
pub struct FourierJsrReport {
    pub per_irrep: Vec<(Partition, u64, JsrEstimate)>,
    pub lower: f64,
    pub upper: f64,
    pub verdict: MixVerdict,
}

/// The Fourier jsr of (Q_1..Q_m) relative to X: the worst jsr of the
/// transform tuples over the nontrivial irreducibles appearing in ℂX.
/// When every distribution is conjugation-invariant the transforms are
/// scalar and each per-irrep jsr is exactly the largest scalar magnitude.
pub fn fourier_jsr(
    qs: &[GroupDistribution],
    kind: &SpaceKind,
    tol: f64,
    budgets: &JsrBudgets,
) -> Result<FourierJsrReport> {
    if qs.is_empty() {
        return Err(Error::invalid("fourier jsr", "need at least one distribution"));
    }
    for q in qs {
        if q.degree() != kind.degree() {
            return Err(Error::DegreeMismatch(q.degree(), kind.degree()));
        }
    }
    let trivial = Partition::one_row(kind.degree());
    let all_scalar = qs.iter().all(|q| q.is_class_invariant(1e-12));
    let mut per_irrep = Vec::new();
    for (shape, mult) in module_multiplicities(kind)? {
        if shape == trivial {
            continue;
        }
        let mult_u64 = mult.to_u64().ok_or(Error::CapExceeded {
            what: "irreducible multiplicity",
            requested: u128::MAX,
            cap: u64::MAX as u128,
        })?;
        let estimate = if all_scalar {
            let radius = qs
                .iter()
                .map(|q| class_scalar(q, &shape).map(f64::abs))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0f64, f64::max);
            JsrEstimate {
                lower: radius,
                upper: radius,
                depth: 1,
                certificate: None,
            }
        } else {
            let rep = OrthogonalRepresentation::build(&shape, DEFAULT_IRREP_DIM_CAP)?;
            let mats = qs
                .iter()
                .map(|q| Ok(fourier_transform(q, &rep)?.mat))
                .collect::<Result<Vec<Mat>>>()?;
            jsr_estimate_with(&MatrixSet::new(mats)?, tol, budgets)
        };
        per_irrep.push((shape, mult_u64, estimate));
    }
    let lower = per_irrep
        .iter()
        .map(|(_, _, e)| e.lower)
        .fold(0.0f64, f64::max);
    let upper = per_irrep
        .iter()
        .map(|(_, _, e)| e.upper)
        .fold(0.0f64, f64::max);
    let verdict = if upper < 1.0 {
        MixVerdict::Mixes
    } else if lower >= 1.0 {
        MixVerdict::DoesNotMix
    } else {
        MixVerdict::Undetermined
    };
    Ok(FourierJsrReport {
        per_irrep,
        lower,
        upper,
        verdict,
    })
}

/// The standard-representation Fourier transforms of the slow-switching
/// pair: the canonical small test set whose jsr is strictly above both
/// spectral radii yet certified below 1/4.
pub fn slow_switching_transforms() -> MatrixSet {
    let (q1, q2) = slow_switching_pair();
    let shape = Partition::new(vec![2, 1]).expect("valid shape");
    let rep = OrthogonalRepresentation::build(&shape, DEFAULT_IRREP_DIM_CAP).expect("small irrep");
    let n1 = fourier_transform(&q1, &rep).expect("transform").mat;
    let n2 = fourier_transform(&q2, &rep).expect("transform").mat;
    MatrixSet::new(vec![n1, n2]).expect("uniform dimensions")
}
