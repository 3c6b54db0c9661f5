//! Gelfand-type lower bounds on the joint spectral radius: for every word
//! w the spectral radius of the product obeys ρ(A_w)^{1/|w|} ≤ jsr, so a
//! depth-limited search over products yields a certified lower bound.

use super::MatrixSet;
use crate::error::{Error, Result};
use crate::linalg::{op_norm, spectral_radius_of, Mat};

/// Default ceiling on matrix multiplications spent in the product search.
pub const DEFAULT_PRODUCT_BUDGET: u64 = 1_000_000;

pub(crate) struct SearchOutcome {
    pub best: f64,
    pub reached_depth: usize,
    pub exhausted: bool,
}

/// Depth-first scan of all products of length ≤ depth, keeping the largest
/// ρ(A_w)^{1/|w|}. Prefixes are pruned when no extension can beat the
/// incumbent: ρ(S·P) ≤ ‖S‖·‖P‖ ≤ maxnorm^{extra}·‖P‖ bounds every
/// completion. Returns best-so-far even if the multiplication budget runs
/// out, with the exhaustion flagged.
pub(crate) fn gelfand_search(set: &MatrixSet, depth: usize, budget: u64) -> SearchOutcome {
    let max_norm = set
        .matrices()
        .iter()
        .map(op_norm)
        .fold(0.0f64, f64::max);
    let mut out = SearchOutcome {
        best: 0.0,
        reached_depth: 0,
        exhausted: false,
    };
    if max_norm == 0.0 || depth == 0 {
        return out;
    }
    let mut mults = 0u64;
    let identity = Mat::identity(set.dim());
    for a in set.matrices() {
        if mults >= budget {
            out.exhausted = true;
            return out;
        }
        mults += 1;
        let p = a.mul(&identity);
        if rec(set, &p, 1, depth, max_norm, &mut out, &mut mults, budget) {
            out.exhausted = true;
            return out;
        }
    }
    out
}

fn rec(
    set: &MatrixSet,
    product: &Mat,
    len: usize,
    depth: usize,
    max_norm: f64,
    out: &mut SearchOutcome,
    mults: &mut u64,
    budget: u64,
) -> bool {
    let value = spectral_radius_of(product).powf(1.0 / len as f64);
    if value > out.best {
        out.best = value;
    }
    if len > out.reached_depth {
        out.reached_depth = len;
    }
    if len == depth {
        return false;
    }
    // No extension of this prefix can beat the incumbent if the norm bound
    // fails at every remaining length.
    let pnorm = op_norm(product);
    let mut bound = pnorm;
    let mut promising = false;
    for extended in (len + 1)..=depth {
        bound *= max_norm;
        if bound.powf(1.0 / extended as f64) > out.best + 1e-15 {
            promising = true;
            break;
        }
    }
    if !promising {
        return false;
    }
    for a in set.matrices() {
        if *mults >= budget {
            return true;
        }
        *mults += 1;
        let child = a.mul(product);
        if rec(set, &child, len + 1, depth, max_norm, out, mults, budget) {
            return true;
        }
    }
    false
}

/// Largest ρ(A_w)^{1/|w|} over words of length 1..=depth — a lower bound
/// on the joint spectral radius, monotone nondecreasing in depth. Errors
/// if the pruned search cannot finish within the multiplication budget.
pub fn jsr_lower_bound(set: &MatrixSet, depth: usize, budget: u64) -> Result<f64> {
    if depth == 0 {
        return Err(Error::invalid("product depth", "must be at least 1"));
    }
    let outcome = gelfand_search(set, depth, budget);
    if outcome.exhausted {
        return Err(Error::CapExceeded {
            what: "matrix-product budget",
            requested: u128::MAX,
            cap: budget as u128,
        });
    }
    Ok(outcome.best)
}
