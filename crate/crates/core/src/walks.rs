//! Random walks on homogeneous spaces: exact distributions, total
//! variation, Fourier-side mixing bounds (averaged sandwich, class-function
//! bounds, the two-row cycle-walk curve), seeded simulation, and switched
//! walks driven by words over several step distributions.

use crate::error::{Error, Result};
use crate::exec;
use crate::fourier::{fourier_transform, GroupDistribution, Sampler};
use crate::linalg::Mat;
use crate::lognum::{lognum_sum, LogNum};
use crate::perm::{CycleType, Permutation};
use crate::space::{EnumeratedSpace, Point, SpaceKind, DEFAULT_SPACE_CAP};
use crate::symrep::character::{
    character_two_row, character_value, frobenius_reciprocity_multiplicity,
};
use crate::symrep::partition::{partitions_of, Partition};
use crate::symrep::tableau::young_rule_multiplicities;
use crate::symrep::yor::{OrthogonalRepresentation, DEFAULT_IRREP_DIM_CAP};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Default ceiling on m^N switched-word enumeration.
pub const DEFAULT_SWITCHED_BUDGET: u128 = 65_536;

/// A probability vector over the canonical point order of a space.
#[derive(Clone, Debug)]
pub struct StateDistribution {
    pub kind: SpaceKind,
    pub probs: Vec<f64>,
}

impl StateDistribution {
    pub fn new(kind: SpaceKind, probs: Vec<f64>) -> Result<StateDistribution> {
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(
                "state distribution",
                format!("mass {total}"),
            ));
        }
        if probs.iter().any(|&p| p < -1e-14) {
            return Err(Error::invalid("state distribution", "negative entry"));
        }
        Ok(StateDistribution { kind, probs })
    }

    pub fn uniform(space: &EnumeratedSpace) -> StateDistribution {
        let m = space.len();
        StateDistribution {
            kind: space.kind().clone(),
            probs: vec![1.0 / m as f64; m],
        }
    }

    pub fn delta(space: &EnumeratedSpace, x0: &Point) -> StateDistribution {
        let mut probs = vec![0.0; space.len()];
        probs[space.index_of(x0)] = 1.0;
        StateDistribution {
            kind: space.kind().clone(),
            probs,
        }
    }
}

/// Total variation distance: half the ℓ1 distance, the largest discrepancy
/// any event can see.
pub fn tv_distance(p: &StateDistribution, q: &StateDistribution) -> Result<f64> {
    if p.kind != q.kind || p.probs.len() != q.probs.len() {
        return Err(Error::invalid("tv distance", "distributions on different spaces"));
    }
    Ok(tv_from_slices(&p.probs, &q.probs))
}

fn tv_from_slices(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p
        .iter()
        .zip(q.iter())
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
}

/// The |X|×|X| transition matrix of one Q-step: entry (y, x) is the
/// probability of jumping from x to y, i.e. Q{g : g·x = y}. Columns are the
/// one-step distributions; the matrix is doubly stochastic because each g
/// permutes the points.
pub fn action_matrix(q: &GroupDistribution, space: &EnumeratedSpace) -> Result<Mat> {
    if q.degree() != space.kind().degree() {
        return Err(Error::DegreeMismatch(q.degree(), space.kind().degree()));
    }
    let m = space.len();
    let mut a = Mat::zeros(m, m);
    for (g, w) in q.iter() {
        for (x, y) in space.action_indices(g).into_iter().enumerate() {
            a[(y, x)] += num_complex::Complex64::new(w, 0.0);
        }
    }
    Ok(a)
}

/// Distribution of the walk after `steps` draws from Q, starting at x0.
/// Sparse push-forward: cost O(steps · |support| · |X|).
pub fn exact_walk_distribution(
    q: &GroupDistribution,
    space: &EnumeratedSpace,
    x0: &Point,
    steps: usize,
) -> Result<StateDistribution> {
    if q.degree() != space.kind().degree() {
        return Err(Error::DegreeMismatch(q.degree(), space.kind().degree()));
    }
    let maps: Vec<(f64, Vec<usize>)> = q
        .iter()
        .map(|(g, w)| (w, space.action_indices(g)))
        .collect();
    let mut probs = vec![0.0; space.len()];
    probs[space.index_of(x0)] = 1.0;
    for _ in 0..steps {
        let mut next = vec![0.0; space.len()];
        for (w, map) in &maps {
            for (x, &y) in map.iter().enumerate() {
                next[y] += w * probs[x];
            }
        }
        probs = next;
    }
    StateDistribution::new(space.kind().clone(), probs)
}

/// Same distribution through the other route: form the N-fold convolution
/// power on the group, then push it onto the space once. Exists so the two
/// routes can be checked against each other.
pub fn exact_walk_distribution_convolution(
    q: &GroupDistribution,
    space: &EnumeratedSpace,
    x0: &Point,
    steps: usize,
) -> Result<StateDistribution> {
    let power = q.convolve_power(steps)?;
    let mut probs = vec![0.0; space.len()];
    let x0i = space.index_of(x0);
    for (g, w) in power.iter() {
        probs[space.action_indices(g)[x0i]] += w;
    }
    StateDistribution::new(space.kind().clone(), probs)
}

/// One row of a bound report: a nontrivial irreducible inside ℂX and its
/// contribution m·‖Q̂(ρ)^N‖²_Fb to the sum.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub shape: String,
    pub multiplicity: u64,
    pub dim: f64,
    pub term: f64,
}

/// Two-sided bound on the average (over starting points) squared total
/// variation after N steps: lower_avg ≤ avg ≤ upper_avg with
/// upper = (1/4)·Σ terms and lower = upper / |X|.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub space: String,
    pub space_size: f64,
    pub steps: usize,
    pub rows: Vec<BoundRow>,
    pub upper_avg: f64,
    pub lower_avg: f64,
}

/// Multiplicity of each irreducible in ℂX, by the route the space kind
/// admits: Kostka numbers for tabloids, character averaging over the cyclic
/// stabilizer for tours, dimensions for the group itself.
pub fn module_multiplicities(kind: &SpaceKind) -> Result<Vec<(Partition, BigUint)>> {
    match kind {
        SpaceKind::Tabloids(mu) => Ok(young_rule_multiplicities(mu)),
        SpaceKind::Group(n) => Ok(partitions_of(*n)
            .into_iter()
            .map(|p| {
                let d = p.dim();
                (p, d)
            })
            .collect()),
        SpaceKind::Tours(n) => {
            let cycle: Vec<usize> = (0..*n).collect();
            let gen = Permutation::from_cycles(*n, &[cycle])?;
            let mut cyclic = vec![Permutation::identity(*n)];
            let mut cur = gen.clone();
            while !cur.is_identity() {
                cyclic.push(cur.clone());
                cur = gen.compose(&cur);
            }
            let mut out = Vec::new();
            for p in partitions_of(*n) {
                let m = frobenius_reciprocity_multiplicity(&p, &cyclic)?;
                if m > 0 {
                    out.push((p, BigUint::from(m)));
                }
            }
            Ok(out)
        }
    }
}

/// ln of the class-invariant Fourier scalar s_λ = Σ_C W(C) χ_λ(C) / dim(λ),
/// with the character taken exactly (big integers on two-row shapes, where
/// values outgrow i64 for large n).
fn scalar_log(class_mass: &BTreeMap<CycleType, f64>, lambda: &Partition) -> Result<LogNum> {
    let n = lambda.n();
    let mut terms = Vec::with_capacity(class_mass.len());
    for (t, &mass) in class_mass {
        let chi = if lambda.rows() <= 2 {
            let b = lambda.part(1);
            // A cycle type is a single k-cycle plus fixed points exactly
            // when its nontrivial lengths are one k; general classes fall
            // back to the border-strip rule below.
            let lengths: Vec<usize> = t.lengths().into_iter().filter(|&l| l > 1).collect();
            match lengths.as_slice() {
                [] => LogNum::from_biguint(&lambda.dim()),
                [k] => LogNum::from_bigint(&character_two_row(n - b, b, *k)?),
                _ => LogNum::from_f64(character_value(lambda, t) as f64),
            }
        } else {
            LogNum::from_f64(character_value(lambda, t) as f64)
        };
        terms.push(LogNum::from_f64(mass).mul(chi));
    }
    Ok(lognum_sum(&terms).div(lambda.dim_log()))
}

fn class_masses(q: &GroupDistribution) -> BTreeMap<CycleType, f64> {
    let mut out = BTreeMap::new();
    for (g, w) in q.iter() {
        *out.entry(g.cycle_type()).or_insert(0.0) += w;
    }
    out
}

/// Two-sided sandwich on the average squared TV to uniformity after N
/// steps. Needs no enumeration: multiplicities come from the shape of the
/// space and the Fourier side is evaluated per irreducible — scalars when Q
/// is conjugation-invariant, explicit matrices (dimension-capped) otherwise.
pub fn average_tv_sandwich(
    q: &GroupDistribution,
    kind: &SpaceKind,
    steps: usize,
) -> Result<BoundReport> {
    if q.degree() != kind.degree() {
        return Err(Error::DegreeMismatch(q.degree(), kind.degree()));
    }
    let trivial = Partition::one_row(kind.degree());
    let scalar_route = q.is_class_invariant(1e-12);
    let masses = class_masses(q);
    let mut rows = Vec::new();
    let mut terms = Vec::new();
    for (shape, mult) in module_multiplicities(kind)? {
        if shape == trivial {
            continue;
        }
        let mult_u64 = mult.to_u64().ok_or(Error::CapExceeded {
            what: "irreducible multiplicity",
            requested: u128::MAX,
            cap: u64::MAX as u128,
        })?;
        let term_log = if scalar_route {
            // ‖(s·I)^N‖²_Fb = dim · s^{2N}, all in log space.
            let s = scalar_log(&masses, &shape)?;
            LogNum::from_f64(mult_u64 as f64)
                .mul(shape.dim_log())
                .mul(s.powi(2 * steps as u32))
        } else {
            let rep = OrthogonalRepresentation::build(&shape, DEFAULT_IRREP_DIM_CAP)?;
            let f = fourier_transform(q, &rep)?;
            let powered = f.mat.pow(steps as u32);
            LogNum::from_f64(mult_u64 as f64 * powered.frobenius_norm_sq())
        };
        rows.push(BoundRow {
            shape: shape.to_string(),
            multiplicity: mult_u64,
            dim: shape.dim_log().to_f64(),
            term: term_log.to_f64(),
        });
        terms.push(term_log);
    }
    let total = lognum_sum(&terms);
    let quarter = LogNum::from_f64(0.25);
    let size_log = LogNum::from_biguint(&kind.size());
    let upper = quarter.mul(total);
    let lower = upper.div(size_log);
    Ok(BoundReport {
        schema_version: 1,
        space: kind.to_string(),
        space_size: size_log.to_f64(),
        steps,
        rows,
        upper_avg: upper.to_f64(),
        lower_avg: lower.to_f64(),
    })
}

/// Exact TV to uniformity from every starting point, plus the indices of
/// the best- and worst-mixing starts.
pub fn per_state_tv(
    q: &GroupDistribution,
    space: &EnumeratedSpace,
    steps: usize,
) -> Result<(Vec<f64>, usize, usize)> {
    let a = action_matrix(q, space)?;
    let p = a.pow(steps as u32);
    let m = space.len();
    let u = 1.0 / m as f64;
    let mut tvs = Vec::with_capacity(m);
    for x in 0..m {
        let mut acc = 0.0;
        for y in 0..m {
            acc += (p[(y, x)].re - u).abs();
        }
        tvs.push(0.5 * acc);
    }
    let argmin = (0..m)
        .min_by(|&i, &j| tvs[i].total_cmp(&tvs[j]))
        .unwrap_or(0);
    let argmax = (0..m)
        .max_by(|&i, &j| tvs[i].total_cmp(&tvs[j]))
        .unwrap_or(0);
    Ok((tvs, argmin, argmax))
}

/// Markov bound on how many starting points can still be α-far from
/// uniform after N steps: |X| · upper_avg / α².
pub fn bad_state_fraction_bound(
    q: &GroupDistribution,
    kind: &SpaceKind,
    steps: usize,
    alpha: f64,
) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::invalid("bad-state bound", "threshold must be positive"));
    }
    let report = average_tv_sandwich(q, kind, steps)?;
    Ok(report.space_size * report.upper_avg / (alpha * alpha))
}

/// Whether ‖q·e_x‖₂ is the same for every start x — the homogeneity that
/// upgrades the averaged sandwich to per-state bounds. Verified
/// exhaustively; the two sufficient conditions (X = G, or Q conjugation-
/// invariant) short-circuit without enumeration.
pub fn l2_homogeneity_check(q: &GroupDistribution, kind: &SpaceKind) -> Result<bool> {
    if matches!(kind, SpaceKind::Group(_)) || q.is_class_invariant(1e-12) {
        return Ok(true);
    }
    let space = EnumeratedSpace::new(kind.clone(), DEFAULT_SPACE_CAP)?;
    let a = action_matrix(q, &space)?;
    let m = space.len();
    let norms: Vec<f64> = (0..m)
        .map(|x| (0..m).map(|y| a[(y, x)].re * a[(y, x)].re).sum::<f64>())
        .collect();
    let lo = norms.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = norms.iter().cloned().fold(0.0f64, f64::max);
    Ok(hi - lo <= 1e-9 * (1.0 + hi))
}

/// Per-state mixing bound for conjugation-invariant Q on tabloids of shape
/// μ: (1/4)·Σ_{λ≠triv} K_{λμ} · dim(λ) · s_λ^{2N}, valid from every start.
/// Entirely in log space so it survives partitions like 26+26.
pub fn class_function_bound(
    q: &GroupDistribution,
    mu: &Partition,
    steps: usize,
) -> Result<LogNum> {
    space_class_function_bound(q, &SpaceKind::Tabloids(mu.clone()), steps)
}

/// The same per-state bound on an arbitrary space kind, with multiplicities
/// dispatched by the shape of the space (Kostka numbers, cyclic-stabilizer
/// character averages, or dimensions).
pub fn space_class_function_bound(
    q: &GroupDistribution,
    kind: &SpaceKind,
    steps: usize,
) -> Result<LogNum> {
    if q.degree() != kind.degree() {
        return Err(Error::DegreeMismatch(q.degree(), kind.degree()));
    }
    if !q.is_class_invariant(1e-12) {
        return Err(Error::NotClassInvariant);
    }
    let masses = class_masses(q);
    let trivial = Partition::one_row(kind.degree());
    let mut terms = Vec::new();
    for (shape, mult) in module_multiplicities(kind)? {
        if shape == trivial {
            continue;
        }
        let s = scalar_log(&masses, &shape)?;
        let term = LogNum::from_biguint(&mult)
            .mul(shape.dim_log())
            .mul(s.powi(2 * steps as u32));
        terms.push(term);
    }
    Ok(lognum_sum(&terms).mul(LogNum::from_f64(0.25)))
}

/// The closed-form curve for the k-cycle class walk on two-row tabloids
/// (a, b): (1/4)·Σ_{t=1..b} χ_{(n−t,t)}(C_k)^{2N} / dim(n−t,t)^{2N−1},
/// with exact big-integer characters pushed straight into log space.
pub fn tabloid_cycle_bound(n: usize, a: usize, b: usize, k: usize, steps: usize) -> Result<LogNum> {
    if a < b || b == 0 || a + b != n {
        return Err(Error::invalid(
            "two-row tabloid shape",
            format!("a={a}, b={b}, n={n}"),
        ));
    }
    if k < 2 || k > n {
        return Err(Error::invalid("cycle length", format!("k={k}")));
    }
    let mut terms = Vec::with_capacity(b);
    for t in 1..=b {
        let chi = LogNum::from_bigint(&character_two_row(n - t, t, k)?);
        let dim = LogNum::from_bigint(&character_two_row(n - t, t, 1)?);
        terms.push(
            chi.powi(2 * steps as u32)
                .div(dim.powi(2 * steps as u32 - 1)),
        );
    }
    Ok(lognum_sum(&terms).mul(LogNum::from_f64(0.25)))
}

/// CSV for a bound curve: header `N,bound`, one row per step count.
pub fn curve_csv(points: &[(usize, f64)]) -> String {
    let mut out = String::from("N,bound\n");
    for (n, b) in points {
        out.push_str(&format!("{n},{b:e}\n"));
    }
    out
}

/// Runs M independent walk replicas and returns the sparse counts of their
/// final positions. Replica r draws from an independent stream (seed,
/// stream=r) of a counter-based generator, so results are reproducible and
/// independent of how replicas are scheduled across threads.
pub fn simulate_walk(
    q: &GroupDistribution,
    kind: &SpaceKind,
    x0: &Point,
    steps: usize,
    replicas: usize,
    seed: u64,
) -> Result<BTreeMap<Point, u64>> {
    if q.degree() != kind.degree() {
        return Err(Error::DegreeMismatch(q.degree(), kind.degree()));
    }
    let sampler = Sampler::new(q);
    let finals = exec::map_indexed(replicas, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let mut x = x0.clone();
        for _ in 0..steps {
            x = kind.act(sampler.sample(&mut rng), &x);
        }
        x
    });
    let mut counts: BTreeMap<Point, u64> = BTreeMap::new();
    for x in finals {
        *counts.entry(x).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Turns sparse simulation counts into a dense empirical distribution over
/// an enumerated space.
pub fn empirical_state_distribution(
    counts: &BTreeMap<Point, u64>,
    space: &EnumeratedSpace,
) -> StateDistribution {
    let total: u64 = counts.values().sum();
    let mut probs = vec![0.0; space.len()];
    for (p, &c) in counts {
        probs[space.index_of(p)] = c as f64 / total as f64;
    }
    StateDistribution {
        kind: space.kind().clone(),
        probs,
    }
}

/// Distribution of the switched walk driven by `word`: step i draws from
/// Qs[word[i]], and word[0] acts first.
pub fn switched_exact_distribution(
    qs: &[GroupDistribution],
    word: &[usize],
    space: &EnumeratedSpace,
    x0: &Point,
) -> Result<StateDistribution> {
    let maps: Vec<Vec<(f64, Vec<usize>)>> = qs
        .iter()
        .map(|q| {
            if q.degree() != space.kind().degree() {
                return Err(Error::DegreeMismatch(q.degree(), space.kind().degree()));
            }
            Ok(q.iter().map(|(g, w)| (w, space.action_indices(g))).collect())
        })
        .collect::<Result<_>>()?;
    let mut probs = vec![0.0; space.len()];
    probs[space.index_of(x0)] = 1.0;
    for &letter in word {
        let step = maps.get(letter).ok_or_else(|| {
            Error::invalid("switched word", format!("letter {letter} out of range"))
        })?;
        let mut next = vec![0.0; space.len()];
        for (w, map) in step {
            for (x, &y) in map.iter().enumerate() {
                next[y] += w * probs[x];
            }
        }
        probs = next;
    }
    StateDistribution::new(space.kind().clone(), probs)
}

/// Exhaustive worst case over all length-N words and all starting points:
/// the quantity whose N-th root converges to the Fourier joint spectral
/// radius of the walked space.
pub fn switched_worst_case_tv(
    qs: &[GroupDistribution],
    space: &EnumeratedSpace,
    steps: usize,
    budget: u128,
) -> Result<(f64, Vec<usize>, usize)> {
    let m = qs.len() as u128;
    let words = m
        .checked_pow(steps as u32)
        .filter(|&w| w <= budget)
        .ok_or(Error::CapExceeded {
            what: "switched word enumeration",
            requested: u128::MAX,
            cap: budget,
        })?;
    let _ = words;
    let mats: Vec<Mat> = qs
        .iter()
        .map(|q| action_matrix(q, space))
        .collect::<Result<_>>()?;
    let u = 1.0 / space.len() as f64;
    let mut best = (f64::NEG_INFINITY, Vec::new(), 0usize);
    let mut word = Vec::with_capacity(steps);
    dfs_words(&mats, steps, &Mat::identity(space.len()), &mut word, u, &mut best);
    Ok(best)
}

fn dfs_words(
    mats: &[Mat],
    remaining: usize,
    product: &Mat,
    word: &mut Vec<usize>,
    u: f64,
    best: &mut (f64, Vec<usize>, usize),
) {
    if remaining == 0 {
        let m = product.rows();
        for x in 0..m {
            let mut acc = 0.0;
            for y in 0..m {
                acc += (product[(y, x)].re - u).abs();
            }
            let tv = 0.5 * acc;
            if tv > best.0 {
                *best = (tv, word.clone(), x);
            }
        }
        return;
    }
    for (letter, a) in mats.iter().enumerate() {
        word.push(letter);
        // Appending a later step multiplies on the left.
        dfs_words(mats, remaining - 1, &a.mul(product), word, u, best);
        word.pop();
    }
}

/// Certified upper bound for one switched word when every letter is
/// conjugation-invariant: (1/4)·Σ_λ m·dim·(Π_i s_λ^{(w_i)})², valid from
/// every starting point.
pub fn switched_class_bound(
    qs: &[GroupDistribution],
    word: &[usize],
    mu: &Partition,
) -> Result<LogNum> {
    let masses: Vec<BTreeMap<CycleType, f64>> = qs
        .iter()
        .map(|q| {
            if !q.is_class_invariant(1e-12) {
                return Err(Error::NotClassInvariant);
            }
            if q.degree() != mu.n() {
                return Err(Error::DegreeMismatch(q.degree(), mu.n()));
            }
            Ok(class_masses(q))
        })
        .collect::<Result<_>>()?;
    for &letter in word {
        if letter >= qs.len() {
            return Err(Error::invalid(
                "switched word",
                format!("letter {letter} out of range"),
            ));
        }
    }
    let trivial = Partition::one_row(mu.n());
    let mut terms = Vec::new();
    for (shape, mult) in young_rule_multiplicities(mu) {
        if shape == trivial {
            continue;
        }
        let mut prod = LogNum::ONE;
        for &letter in word {
            prod = prod.mul(scalar_log(&masses[letter], &shape)?);
        }
        terms.push(
            LogNum::from_biguint(&mult)
                .mul(shape.dim_log())
                .mul(prod.powi(2)),
        );
    }
    Ok(lognum_sum(&terms).mul(LogNum::from_f64(0.25)))
}

/// Both sides of the ℓ2 identity behind the sandwich: the summed squared
/// ℓ2 distance of all one-step columns to uniform (computed on the space)
/// against Σ m_λ‖Q̂(ρ_λ)‖²_Fb (computed on the group).
pub fn parseval_check(q: &GroupDistribution, mu: &Partition) -> Result<(f64, f64)> {
    let space = EnumeratedSpace::new(SpaceKind::Tabloids(mu.clone()), DEFAULT_SPACE_CAP)?;
    let a = action_matrix(q, &space)?;
    let m = space.len();
    let u = 1.0 / m as f64;
    let mut lhs = 0.0;
    for x in 0..m {
        for y in 0..m {
            let d = a[(y, x)].re - u;
            lhs += d * d;
        }
    }
    let trivial = Partition::one_row(mu.n());
    let mut rhs = 0.0;
    for (shape, mult) in young_rule_multiplicities(mu) {
        if shape == trivial {
            continue;
        }
        let rep = OrthogonalRepresentation::build(&shape, DEFAULT_IRREP_DIM_CAP)?;
        let f = fourier_transform(q, &rep)?;
        rhs += mult.to_f64().unwrap_or(f64::INFINITY) * f.frobenius_norm_sq();
    }
    Ok((lhs, rhs))
}
