//! Concentration-driven Monte Carlo estimation of uniform averages over
//! homogeneous spaces: Hoeffding sample-size planning against a proven
//! total-variation bound for the sampling walk, mean estimation with
//! explicit (radius, confidence) guarantees, and the Gibbs-weighted tour
//! length estimators used to study annealing temperatures.

use crate::error::{Error, Result};
use crate::exec;
use crate::fourier::{GroupDistribution, Sampler};
use crate::perm::Permutation;
use crate::space::{EnumeratedSpace, Point, SpaceKind, DEFAULT_SPACE_CAP};
use crate::symrep::character::frobenius_reciprocity_multiplicity;
use crate::symrep::partition::Partition;
use crate::walks::space_class_function_bound;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Ceiling on walk lengths explored when planning a target accuracy.
pub const DEFAULT_PLAN_STEP_CAP: usize = 1 << 24;

/// Sampling plan: M independent N-step walks estimate a uniform average of
/// a [−1, 1]-valued function to accuracy ε, except with probability ≤ η,
/// provided the walk is within tv_bound of uniform after N steps.
#[derive(Clone, Debug, Serialize)]
pub struct EstimationPlan {
    pub epsilon: f64,
    pub eta: f64,
    pub tv_bound: f64,
    #[serde(rename = "N")]
    pub steps: usize,
    #[serde(rename = "M")]
    pub samples: u64,
}

impl EstimationPlan {
    /// Builds a plan with the least sample count meeting the target.
    pub fn new(epsilon: f64, eta: f64, tv_bound: f64, steps: usize) -> Result<EstimationPlan> {
        let samples = hoeffding_sample_size(epsilon, eta, tv_bound)?;
        let plan = EstimationPlan {
            epsilon,
            eta,
            tv_bound,
            steps,
            samples,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// The concentration bound 2·exp(−M(ε − tv)²/2) this plan achieves.
    pub fn failure_bound(&self) -> f64 {
        let margin = self.epsilon - self.tv_bound;
        2.0 * (-(self.samples as f64) * margin * margin / 2.0).exp()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidPlan(format!("eta {} outside (0, 1)", self.eta)));
        }
        if !(self.tv_bound >= 0.0) {
            return Err(Error::InvalidPlan("negative tv bound".into()));
        }
        if self.tv_bound >= self.epsilon {
            return Err(Error::InvalidPlan(format!(
                "tv bound {} must be strictly below epsilon {}",
                self.tv_bound, self.epsilon
            )));
        }
        if self.failure_bound() > self.eta {
            return Err(Error::InvalidPlan(format!(
                "{} samples give failure bound {:.3e} above eta {}",
                self.samples,
                self.failure_bound(),
                self.eta
            )));
        }
        Ok(())
    }
}

/// Least M with 2·exp(−M(ε − tv)²/2) ≤ η.
pub fn hoeffding_sample_size(epsilon: f64, eta: f64, tv_bound: f64) -> Result<u64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidPlan(format!("eta {eta} outside (0, 1)")));
    }
    if !(tv_bound >= 0.0) || tv_bound >= epsilon {
        return Err(Error::InvalidPlan(format!(
            "tv bound {tv_bound} leaves no margin below epsilon {epsilon}"
        )));
    }
    let margin = epsilon - tv_bound;
    let mut m = (2.0 * (2.0 / eta).ln() / (margin * margin)).ceil() as u64;
    // Guard the ceil against floating-point edges on both sides.
    while m > 1 && 2.0 * (-((m - 1) as f64) * margin * margin / 2.0).exp() <= eta {
        m -= 1;
    }
    while 2.0 * (-(m as f64) * margin * margin / 2.0).exp() > eta {
        m += 1;
    }
    Ok(m.max(1))
}

/// Outcome of a mean estimation run: the true uniform mean lies within
/// `radius` of `estimate` with probability at least `confidence`.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub radius: f64,
    pub confidence: f64,
    pub declared_bound: f64,
    #[serde(rename = "N")]
    pub steps: usize,
    #[serde(rename = "M")]
    pub samples: u64,
    pub tv_bound: f64,
    pub seed: u64,
}

fn kahan_mean(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum / values.len() as f64
}

/// Estimates the uniform mean of f over the space by averaging f at the
/// endpoints of M independent N-step walks from the canonical origin.
/// f is rescaled by the caller-declared sup bound so the Hoeffding range
/// is [−1, 1]; a sample exceeding the declared bound is an error.
pub fn estimate_uniform_mean<F>(
    f: F,
    declared_bound: f64,
    q: &GroupDistribution,
    kind: &SpaceKind,
    plan: &EstimationPlan,
    seed: u64,
) -> Result<EstimateReport>
where
    F: Fn(&Point) -> f64 + Sync,
{
    plan.validate()?;
    if !(declared_bound > 0.0) {
        return Err(Error::invalid("declared bound", "must be positive"));
    }
    if q.degree() != kind.degree() {
        return Err(Error::DegreeMismatch(q.degree(), kind.degree()));
    }
    let sampler = Sampler::new(q);
    let origin = kind.origin();
    let values = exec::map_indexed(plan.samples as usize, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut x = origin.clone();
        for _ in 0..plan.steps {
            x = kind.act(sampler.sample(&mut rng), &x);
        }
        f(&x) / declared_bound
    });
    if let Some(bad) = values.iter().find(|v| v.abs() > 1.0 + 1e-12) {
        return Err(Error::invalid(
            "declared bound",
            format!("sample {} exceeds it after rescaling", bad * declared_bound),
        ));
    }
    Ok(EstimateReport {
        estimate: declared_bound * kahan_mean(&values),
        radius: declared_bound * plan.epsilon,
        confidence: 1.0 - plan.failure_bound(),
        declared_bound,
        steps: plan.steps,
        samples: plan.samples,
        tv_bound: plan.tv_bound,
        seed,
    })
}

/// A symmetric travelling-salesman instance together with the tour-length
/// ceiling D = the sum of the n largest pairwise distances.
#[derive(Clone, Debug)]
pub struct TourInstance {
    n: usize,
    dist: Vec<Vec<f64>>,
    d_bound: f64,
}

impl TourInstance {
    pub fn new(dist: Vec<Vec<f64>>) -> Result<TourInstance> {
        let n = dist.len();
        if n < 3 {
            return Err(Error::invalid("tour instance", "need at least 3 cities"));
        }
        if dist.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("tour instance", "distance matrix must be square"));
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return Err(Error::invalid("tour instance", "diagonal must be zero"));
            }
            for j in (i + 1)..n {
                if !(dist[i][j] >= 0.0) {
                    return Err(Error::invalid("tour instance", "distances must be nonnegative"));
                }
                if (dist[i][j] - dist[j][i]).abs() > 1e-12 {
                    return Err(Error::invalid("tour instance", "distance matrix must be symmetric"));
                }
                pairs.push(dist[i][j]);
            }
        }
        pairs.sort_by(|a, b| b.total_cmp(a));
        let d_bound = pairs.iter().take(n).sum();
        Ok(TourInstance { n, dist, d_bound })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    /// Upper bound on every tour length: the n largest pairwise distances.
    pub fn d_bound(&self) -> f64 {
        self.d_bound
    }

    /// Total length of the closed tour visiting the cities in word order.
    pub fn tour_length(&self, tour: &Point) -> f64 {
        let mut total = 0.0;
        for k in 0..tour.len() {
            let a = tour[k] as usize;
            let b = tour[(k + 1) % tour.len()] as usize;
            total += self.dist[a][b];
        }
        total
    }

    pub fn from_csv(text: &str) -> Result<TourInstance> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad distance {cell:?}: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        TourInstance::new(rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.dist {
            let cells: Vec<String> = row.iter().map(|d| format!("{d}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Gibbs-weighted length a_β(x) = ℓ(x)·e^{−βℓ(x)}. The exponent is the
/// tour length itself, keeping a_β/c_β equal to the Gibbs-average length.
pub fn gibbs_weighted_length(inst: &TourInstance, beta: f64, tour: &Point) -> f64 {
    let l = inst.tour_length(tour);
    l * (-beta * l).exp()
}

/// Gibbs weight c_β(x) = e^{−βℓ(x)}.
pub fn gibbs_weight(inst: &TourInstance, beta: f64, tour: &Point) -> f64 {
    (-beta * inst.tour_length(tour)).exp()
}

/// Exact Gibbs-average tour length ℓ̄_β = Σℓe^{−βℓ} / Σe^{−βℓ} by full
/// enumeration of the (n−1)!-point tour space. Weights are shifted by the
/// minimum length — the ratio is unchanged and e^{−βℓ} cannot underflow.
pub fn enumerate_lbar(inst: &TourInstance, beta: f64) -> Result<f64> {
    let space = EnumeratedSpace::new(SpaceKind::Tours(inst.n), DEFAULT_SPACE_CAP)?;
    let lengths: Vec<f64> = space.points().iter().map(|x| inst.tour_length(x)).collect();
    let shortest = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    let mut a = 0.0;
    let mut c = 0.0;
    for l in lengths {
        let w = (-beta * (l - shortest)).exp();
        a += l * w;
        c += w;
    }
    Ok(a / c)
}

/// Accuracy the walk must reach for a ratio-level target ε: the Gibbs
/// denominators are at least e^{−βD}, so sample-mean errors inflate by at
/// most D²·e^{2βD} when pushed through the ratio.
pub fn annealing_required_tv(epsilon: f64, beta: f64, d_bound: f64) -> f64 {
    epsilon * (-2.0 * beta * d_bound).exp() / (d_bound * d_bound)
}

/// Result of one annealing estimation run: ℓ̄_β is within `radius` of
/// `lbar_hat` with probability at least `confidence`.
#[derive(Clone, Debug, Serialize)]
pub struct AnnealingReport {
    #[serde(rename = "estimate")]
    pub lbar_hat: f64,
    pub radius: f64,
    pub confidence: f64,
    pub a_hat: f64,
    pub c_hat: f64,
    pub epsilon: f64,
    pub beta: f64,
    #[serde(rename = "N")]
    pub steps: usize,
    #[serde(rename = "M")]
    pub samples: u64,
    pub tv_bound: f64,
    pub seed: u64,
}

/// Estimates ℓ̄_β = 𝔼[a_β]/𝔼[c_β] from M independent N-step walks on the
/// tour space. The achieved ratio accuracy is back-derived from (N, M):
/// walk-level accuracy ε₀ = √(2·ln(2/η)/M) + tv inflates to
/// ε = ε₀·D²·e^{2βD}, and the two sample means each miss their mean with
/// probability ≤ η, so the ratio is within 2ε at confidence 1 − 2η.
/// The tv bound comes from the conjugation-invariant route unless the
/// caller supplies one.
pub fn annealing_length_estimate(
    inst: &TourInstance,
    beta: f64,
    q: &GroupDistribution,
    steps: usize,
    samples: u64,
    eta: f64,
    seed: u64,
    tv_bound: Option<f64>,
) -> Result<AnnealingReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidPlan(format!("eta {eta} outside (0, 1)")));
    }
    if samples == 0 {
        return Err(Error::InvalidPlan("need at least one sample".into()));
    }
    let kind = SpaceKind::Tours(inst.n);
    let tv = match tv_bound {
        Some(t) => t,
        None => space_class_function_bound(q, &kind, steps)?
            .to_f64()
            .sqrt()
            .min(1.0),
    };
    let margin = (2.0 * (2.0 / eta).ln() / samples as f64).sqrt();
    let eps0 = margin + tv;
    let epsilon = eps0 * inst.d_bound * inst.d_bound * (2.0 * beta * inst.d_bound).exp();

    let sampler = Sampler::new(q);
    let origin = kind.origin();
    let finals = exec::map_indexed(samples as usize, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut x = origin.clone();
        for _ in 0..steps {
            x = kind.act(sampler.sample(&mut rng), &x);
        }
        let l = inst.tour_length(&x);
        let w = (-beta * l).exp();
        (l * w, w)
    });
    let a_values: Vec<f64> = finals.iter().map(|(a, _)| *a).collect();
    let c_values: Vec<f64> = finals.iter().map(|(_, c)| *c).collect();
    let a_hat = kahan_mean(&a_values);
    let c_hat = kahan_mean(&c_values);
    Ok(AnnealingReport {
        lbar_hat: a_hat / c_hat,
        radius: 2.0 * epsilon,
        confidence: 1.0 - 2.0 * eta,
        a_hat,
        c_hat,
        epsilon,
        beta,
        steps,
        samples,
        tv_bound: tv,
        seed,
    })
}

/// Plans an annealing run hitting ratio accuracy ε at confidence 1 − 2η:
/// finds the least N whose proven tv bound clears the required walk-level
/// accuracy, then sizes M by the Hoeffding inversion. Errors name the
/// minimal feasible N when it exceeds the step cap.
pub fn annealing_plan(
    inst: &TourInstance,
    beta: f64,
    q: &GroupDistribution,
    epsilon: f64,
    eta: f64,
    max_steps: usize,
) -> Result<EstimationPlan> {
    let kind = SpaceKind::Tours(inst.n);
    let required = annealing_required_tv(epsilon, beta, inst.d_bound);
    if !(required > 0.0) {
        return Err(Error::InvalidPlan("target accuracy must be positive".into()));
    }
    let tv_at = |steps: usize| -> Result<f64> {
        Ok(space_class_function_bound(q, &kind, steps)?
            .to_f64()
            .sqrt()
            .min(1.0))
    };
    // Doubling scan for a feasible length, then binary search for the
    // least one (the proven bound is monotone in N).
    let mut hi = 1usize;
    while tv_at(hi)? >= required {
        hi *= 2;
        if hi > DEFAULT_PLAN_STEP_CAP {
            return Err(Error::InvalidPlan(format!(
                "walk cannot reach tv < {required:.3e} within {DEFAULT_PLAN_STEP_CAP} steps"
            )));
        }
    }
    let mut lo = hi / 2; // tv(lo) ≥ required (or lo = 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mid == 0 || tv_at(mid)? >= required {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let minimal = hi;
    if minimal > max_steps {
        return Err(Error::InvalidPlan(format!(
            "accuracy {epsilon} needs at least N = {minimal} steps, above the cap {max_steps}"
        )));
    }
    EstimationPlan::new(required, eta, tv_at(minimal)?, minimal)
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact multiplicity-to-dimension ratio m(S^λ, ℂX)/dim(S^λ) for the tour
/// space on a prime number of cities, computed by averaging characters
/// over the cyclic stabilizer. Primality makes every nonidentity rotation
/// a full cycle, so the ratio is (1 + (n−1)·χ_λ(c)/dim)/n.
pub fn tours_multiplicity_ratio(n: usize, lambda: &Partition) -> Result<f64> {
    if !is_prime(n) {
        return Err(Error::invalid("tour multiplicity ratio", "city count must be prime"));
    }
    if lambda.n() != n {
        return Err(Error::DegreeMismatch(lambda.n(), n));
    }
    let m = tours_multiplicity(n, lambda)?;
    Ok(m.to_f64().unwrap_or(f64::INFINITY) / lambda.dim().to_f64().unwrap_or(f64::INFINITY))
}

/// The multiplicity itself, exactly.
pub fn tours_multiplicity(n: usize, lambda: &Partition) -> Result<BigUint> {
    let cycle: Vec<usize> = (0..n).collect();
    let gen = Permutation::from_cycles(n, &[cycle])?;
    let mut cyclic = vec![Permutation::identity(n)];
    let mut cur = gen.clone();
    while !cur.is_identity() {
        cyclic.push(cur.clone());
        cur = gen.compose(&cur);
    }
    Ok(BigUint::from(frobenius_reciprocity_multiplicity(
        lambda, &cyclic,
    )?))
}
