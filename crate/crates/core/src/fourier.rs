//! Probability distributions on S_n with sparse support: convolution,
//! Fourier transforms at the irreducibles, and the scalar shortcut for
//! conjugation-invariant distributions.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::perm::{enumerate_class, enumerate_group, CycleType, Permutation};
use crate::symrep::partition::Partition;
use crate::symrep::yor::OrthogonalRepresentation;
use crate::symrep::character::character_value;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Weights below this are dropped from the support on construction.
const SUPPORT_EPS: f64 = 0.0;
/// Total-mass tolerance for a probability distribution.
const MASS_TOL: f64 = 1e-12;

/// A probability distribution on S_n, stored sparsely over its support in a
/// sorted map so iteration order (and everything derived from it, like
/// sampling) is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDistribution {
    n: usize,
    weights: BTreeMap<Permutation, f64>,
}

impl GroupDistribution {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (Permutation, f64)>) -> Result<GroupDistribution> {
        let mut weights: BTreeMap<Permutation, f64> = BTreeMap::new();
        for (g, w) in entries {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(g.degree(), n));
            }
            if w < 0.0 || !w.is_finite() {
                return Err(Error::invalid("distribution", format!("weight {w} on {g}")));
            }
            if w > SUPPORT_EPS {
                *weights.entry(g).or_insert(0.0) += w;
            }
        }
        let total: f64 = weights.values().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::invalid(
                "distribution",
                format!("total mass {total} is not 1"),
            ));
        }
        Ok(GroupDistribution { n, weights })
    }

    /// Point mass at g.
    pub fn delta(g: Permutation) -> GroupDistribution {
        let n = g.degree();
        GroupDistribution {
            n,
            weights: BTreeMap::from([(g, 1.0)]),
        }
    }

    /// Uniform distribution on all of S_n (n small enough to enumerate).
    pub fn uniform(n: usize) -> Result<GroupDistribution> {
        let group = enumerate_group(n)?;
        let w = 1.0 / group.len() as f64;
        Ok(GroupDistribution {
            n,
            weights: group.into_iter().map(|g| (g, w)).collect(),
        })
    }

    /// Uniform distribution on one conjugacy class.
    pub fn uniform_class(t: &CycleType, support_cap: usize) -> Result<GroupDistribution> {
        let class = enumerate_class(t, support_cap)?;
        let w = 1.0 / class.len() as f64;
        Ok(GroupDistribution {
            n: t.degree(),
            weights: class.into_iter().map(|g| (g, w)).collect(),
        })
    }

    /// The lazy transposition walk: identity with probability 1/n, each of
    /// the n(n-1)/2 transpositions with probability 2/n².
    pub fn lazy_transposition(n: usize) -> Result<GroupDistribution> {
        if n < 2 {
            return Err(Error::invalid("lazy transposition walk", "needs n ≥ 2"));
        }
        let nf = n as f64;
        let mut weights = BTreeMap::new();
        weights.insert(Permutation::identity(n), 1.0 / nf);
        for i in 0..n {
            for j in i + 1..n {
                let t = Permutation::from_cycles(n, &[vec![i, j]])?;
                weights.insert(t, 2.0 / (nf * nf));
            }
        }
        Ok(GroupDistribution { n, weights })
    }

    /// Builders addressable by name: `uniform_class:<a+b+c>` (cycle type as
    /// a partition of n) and `lazy_transposition:<n>`.
    pub fn from_named(name: &str, support_cap: usize) -> Result<GroupDistribution> {
        let (kind, arg) = name
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("named distribution {name:?} lacks ':'")))?;
        match kind {
            "uniform_class" => {
                let shape: Partition = arg.parse()?;
                let t = CycleType::from(&shape);
                GroupDistribution::uniform_class(&t, support_cap)
            }
            "lazy_transposition" => {
                let n = arg
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad degree {arg:?}: {e}")))?;
                GroupDistribution::lazy_transposition(n)
            }
            other => Err(Error::Parse(format!("unknown distribution builder {other:?}"))),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn weight(&self, g: &Permutation) -> f64 {
        self.weights.get(g).copied().unwrap_or(0.0)
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, f64)> {
        self.weights.iter().map(|(g, &w)| (g, w))
    }

    pub fn max_weight_diff(&self, other: &GroupDistribution) -> f64 {
        let mut worst: f64 = 0.0;
        for (g, w) in self.iter() {
            worst = worst.max((w - other.weight(g)).abs());
        }
        for (g, w) in other.iter() {
            worst = worst.max((w - self.weight(g)).abs());
        }
        worst
    }

    /// True when the weight function is constant on conjugacy classes. The
    /// support must then contain each touched class in full.
    pub fn is_class_invariant(&self, tol: f64) -> bool {
        let mut classes: BTreeMap<CycleType, (usize, f64, f64)> = BTreeMap::new();
        for (g, w) in self.iter() {
            let e = classes
                .entry(g.cycle_type())
                .or_insert((0, f64::INFINITY, f64::NEG_INFINITY));
            e.0 += 1;
            e.1 = e.1.min(w);
            e.2 = e.2.max(w);
        }
        classes.iter().all(|(t, &(count, lo, hi))| {
            hi - lo <= tol && BigUint::from(count) == t.class_size()
        })
    }

    /// Q1 ∗ Q2(h) = Σ_g Q1(h g⁻¹) Q2(g): the step distribution of "draw
    /// from Q2, then from Q1, multiply".
    pub fn convolve(&self, rhs: &GroupDistribution) -> Result<GroupDistribution> {
        if self.n != rhs.n {
            return Err(Error::DegreeMismatch(self.n, rhs.n));
        }
        let mut weights: BTreeMap<Permutation, f64> = BTreeMap::new();
        for (a, wa) in self.iter() {
            for (b, wb) in rhs.iter() {
                *weights.entry(a.compose(b)).or_insert(0.0) += wa * wb;
            }
        }
        Ok(GroupDistribution {
            n: self.n,
            weights,
        })
    }

    /// N-fold convolution power; N = 0 gives the point mass at the identity.
    pub fn convolve_power(&self, steps: usize) -> Result<GroupDistribution> {
        let mut acc = GroupDistribution::delta(Permutation::identity(self.n));
        for _ in 0..steps {
            acc = self.convolve(&acc)?;
        }
        Ok(acc)
    }

    /// JSON form: {"n": .., "support": [{"perm": [..], "p": ..}, ..]}.
    pub fn to_json(&self) -> String {
        let dto = DistributionJson {
            n: self.n,
            support: self
                .iter()
                .map(|(g, p)| SupportEntryJson {
                    perm: g.images().collect(),
                    p,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("distribution serializes")
    }

    pub fn from_json(text: &str) -> Result<GroupDistribution> {
        let dto: DistributionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("distribution JSON: {e}")))?;
        let entries = dto
            .support
            .into_iter()
            .map(|e| Ok((Permutation::from_images(&e.perm)?, e.p)))
            .collect::<Result<Vec<_>>>()?;
        GroupDistribution::new(dto.n, entries)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionJson {
    n: usize,
    support: Vec<SupportEntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportEntryJson {
    perm: Vec<usize>,
    p: f64,
}

/// The Fourier transform Q̂(ρ_λ) = Σ_g Q(g) ρ_λ(g) at one irreducible.
pub struct FourierMatrix {
    pub shape: Partition,
    pub mat: Mat,
}

impl FourierMatrix {
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.mat.frobenius_norm_sq()
    }

    pub fn op_norm(&self) -> f64 {
        crate::linalg::op_norm(&self.mat)
    }
}

/// Direct-summation Fourier transform. Cost: |support| dense matrix
/// products of the irreducible's dimension.
pub fn fourier_transform(q: &GroupDistribution, rep: &OrthogonalRepresentation) -> Result<FourierMatrix> {
    if q.degree() != rep.degree() {
        return Err(Error::DegreeMismatch(q.degree(), rep.degree()));
    }
    let mut acc = Mat::zeros(rep.dim(), rep.dim());
    for (g, w) in q.iter() {
        acc = acc.add(&rep.matrix(g).scale_re(w));
    }
    Ok(FourierMatrix {
        shape: rep.shape().clone(),
        mat: acc,
    })
}

/// For conjugation-invariant Q, Schur's lemma collapses Q̂(ρ_λ) to s·I with
/// s = Σ_classes W(C) χ_λ(C) / dim(λ). No matrix of dimension dim(λ) is
/// ever formed, which is what makes large-n bound evaluation feasible.
pub fn class_scalar(q: &GroupDistribution, lambda: &Partition) -> Result<f64> {
    if q.degree() != lambda.n() {
        return Err(Error::DegreeMismatch(q.degree(), lambda.n()));
    }
    if !q.is_class_invariant(1e-12) {
        return Err(Error::NotClassInvariant);
    }
    let mut class_mass: BTreeMap<CycleType, f64> = BTreeMap::new();
    for (g, w) in q.iter() {
        *class_mass.entry(g.cycle_type()).or_insert(0.0) += w;
    }
    let dim = lambda.dim().to_f64().expect("dimension fits f64 range");
    let mut s = 0.0;
    for (t, mass) in &class_mass {
        s += mass * character_value(lambda, t) as f64;
    }
    Ok(s / dim)
}

/// Inverse-CDF sampler over the sorted support; identical seeds give
/// identical draws on every platform.
pub struct Sampler {
    elements: Vec<Permutation>,
    cumulative: Vec<f64>,
}

impl Sampler {
    pub fn new(q: &GroupDistribution) -> Sampler {
        let mut elements = Vec::with_capacity(q.support_len());
        let mut cumulative = Vec::with_capacity(q.support_len());
        let mut acc = 0.0;
        for (g, w) in q.iter() {
            acc += w;
            elements.push(g.clone());
            cumulative.push(acc);
        }
        if let Some(last) = cumulative.last_mut() {
            *last = f64::INFINITY; // guard against accumulated rounding
        }
        Sampler {
            elements,
            cumulative,
        }
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> &Permutation {
        let u = uniform_f64(rng);
        let idx = self.cumulative.partition_point(|&c| c <= u);
        &self.elements[idx.min(self.elements.len() - 1)]
    }
}

/// Uniform draw in [0, 1) built directly from the top 53 bits of the
/// generator output, so results do not depend on a rand-crate version.
pub fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Convenience: trivial-shape transform is always [1].
pub fn trivial_transform() -> Mat {
    let mut m = Mat::zeros(1, 1);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m
}

/// A fixed pair of step distributions on S_3 whose alternation mixes
/// strictly slower than either distribution run alone — the canonical
/// witness that switched-walk analysis cannot be reduced to the individual
/// chains. Weights are eighths on (e, (01), (12), (02), [1,2,0], [2,0,1]):
/// first distribution 2,1,1,1,2,1; second 1,1,1,2,2,1.
pub fn slow_switching_pair() -> (GroupDistribution, GroupDistribution) {
    let elements = [
        Permutation::identity(3),
        Permutation::from_images(&[1, 0, 2]).unwrap(),
        Permutation::from_images(&[0, 2, 1]).unwrap(),
        Permutation::from_images(&[2, 1, 0]).unwrap(),
        Permutation::from_images(&[1, 2, 0]).unwrap(),
        Permutation::from_images(&[2, 0, 1]).unwrap(),
    ];
    let build = |eighths: [f64; 6]| {
        GroupDistribution::new(
            3,
            elements
                .iter()
                .cloned()
                .zip(eighths.iter().map(|w| w / 8.0)),
        )
        .expect("fixed weights sum to 1")
    };
    (
        build([2.0, 1.0, 1.0, 1.0, 2.0, 1.0]),
        build([1.0, 1.0, 1.0, 2.0, 2.0, 1.0]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{op_norm, spectral_radius_of};
    use crate::symrep::partition::partitions_of;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::str::FromStr;

    fn example_q1() -> GroupDistribution {
        slow_switching_pair().0
    }

    fn example_q2() -> GroupDistribution {
        slow_switching_pair().1
    }

    fn random_distribution(n: usize, rng: &mut ChaCha8Rng) -> GroupDistribution {
        let group = enumerate_group(n).unwrap();
        let mut entries = Vec::new();
        let mut total = 0.0;
        for g in group {
            let w = uniform_f64(rng);
            total += w;
            entries.push((g, w));
        }
        for e in &mut entries {
            e.1 /= total;
        }
        GroupDistribution::new(n, entries).unwrap()
    }

    #[test]
    fn builders_are_probability_distributions() {
        let lazy = GroupDistribution::lazy_transposition(5).unwrap();
        assert_eq!(lazy.support_len(), 1 + 10);
        assert!((lazy.iter().map(|(_, w)| w).sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(lazy.is_class_invariant(0.0));

        let class = GroupDistribution::from_named("uniform_class:3+1+1", 50_000).unwrap();
        assert_eq!(class.degree(), 5);
        assert_eq!(class.support_len(), 20);
        assert!(class.is_class_invariant(0.0));

        let named_lazy = GroupDistribution::from_named("lazy_transposition:5", 0).unwrap();
        assert_eq!(named_lazy, lazy);
        assert!(GroupDistribution::from_named("bogus:3", 0).is_err());

        // A lopsided distribution is not class-invariant.
        let skew = GroupDistribution::new(
            3,
            [
                (Permutation::identity(3), 0.5),
                (Permutation::from_str("[1,0,2]").unwrap(), 0.5),
            ],
        )
        .unwrap();
        assert!(!skew.is_class_invariant(1e-9));
    }

    #[test]
    fn construction_rejects_bad_mass() {
        let short = GroupDistribution::new(3, [(Permutation::identity(3), 0.5)]);
        assert!(short.is_err());
        let negative = GroupDistribution::new(
            3,
            [
                (Permutation::identity(3), 1.5),
                (Permutation::from_str("[1,0,2]").unwrap(), -0.5),
            ],
        );
        assert!(negative.is_err());
    }

    #[test]
    fn convolution_identities() {
        let q = example_q1();
        let e = GroupDistribution::delta(Permutation::identity(3));
        assert!(e.convolve(&q).unwrap().max_weight_diff(&q) < 1e-15);
        assert!(q.convolve(&e).unwrap().max_weight_diff(&q) < 1e-15);

        let g = Permutation::from_str("[1,2,0]").unwrap();
        let h = Permutation::from_str("[1,0,2]").unwrap();
        let gh = GroupDistribution::delta(g.clone())
            .convolve(&GroupDistribution::delta(h.clone()))
            .unwrap();
        assert!(gh.max_weight_diff(&GroupDistribution::delta(g.compose(&h))) < 1e-15);

        let u = GroupDistribution::uniform(3).unwrap();
        assert!(u.convolve(&q).unwrap().max_weight_diff(&u) < 1e-12);
        assert!(q.convolve(&u).unwrap().max_weight_diff(&u) < 1e-12);

        let sq = q.convolve(&q).unwrap();
        assert!((sq.iter().map(|(_, w)| w).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sign_transforms_of_the_example_pair() {
        let sign_rep =
            OrthogonalRepresentation::build(&Partition::one_column(3), 2048).unwrap();
        let t1 = fourier_transform(&example_q1(), &sign_rep).unwrap();
        assert!((t1.mat[(0, 0)].re - 0.25).abs() < 1e-12);
        let t2 = fourier_transform(&example_q2(), &sign_rep).unwrap();
        assert!(t2.mat[(0, 0)].re.abs() < 1e-12);
    }

    #[test]
    fn standard_transform_invariants_of_the_example() {
        let rep = OrthogonalRepresentation::build(&Partition::from_str("2+1").unwrap(), 2048)
            .unwrap();
        let n1 = fourier_transform(&example_q1(), &rep).unwrap();
        // Basis-independent checks: eigenvalue magnitudes 1/8 (twice),
        // squared Frobenius norm 1/32, spectral radius of the product pair.
        let eigs = crate::linalg::eigenvalues(&n1.mat);
        let mut mags: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] - 0.125).abs() < 1e-9 && (mags[1] - 0.125).abs() < 1e-9);
        assert!((n1.frobenius_norm_sq() - 0.03125).abs() < 1e-9);

        let n2 = fourier_transform(&example_q2(), &rep).unwrap();
        let prod = n1.mat.mul(&n2.mat);
        assert!((spectral_radius_of(&prod) - 0.03125).abs() < 1e-6);
    }

    #[test]
    fn trivial_transform_is_one_and_uniform_kills_the_rest() {
        let trivial = OrthogonalRepresentation::build(&Partition::one_row(4), 2048).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = random_distribution(4, &mut rng);
        let t = fourier_transform(&q, &trivial).unwrap();
        assert!((t.mat[(0, 0)].re - 1.0).abs() < 1e-12);

        let u = GroupDistribution::uniform(4).unwrap();
        for shape in partitions_of(4) {
            if shape == Partition::one_row(4) {
                continue;
            }
            let rep = OrthogonalRepresentation::build(&shape, 2048).unwrap();
            let m = fourier_transform(&u, &rep).unwrap();
            assert!(m.mat.max_abs() < 1e-12, "shape {shape}");
        }
    }

    #[test]
    fn transform_multiplicativity_under_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let reps: Vec<OrthogonalRepresentation> = partitions_of(4)
            .iter()
            .map(|s| OrthogonalRepresentation::build(s, 2048).unwrap())
            .collect();
        for _ in 0..10 {
            let p = random_distribution(4, &mut rng);
            let q = random_distribution(4, &mut rng);
            let pq = p.convolve(&q).unwrap();
            for rep in &reps {
                let lhs = fourier_transform(&pq, rep).unwrap().mat;
                let rhs = fourier_transform(&p, rep)
                    .unwrap()
                    .mat
                    .mul(&fourier_transform(&q, rep).unwrap().mat);
                assert!(lhs.sub(&rhs).max_abs() < 1e-9);
            }
        }
    }

    #[test]
    fn transforms_are_contractions() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let q = random_distribution(4, &mut rng);
            for shape in partitions_of(4) {
                let rep = OrthogonalRepresentation::build(&shape, 2048).unwrap();
                let m = fourier_transform(&q, &rep).unwrap();
                assert!(op_norm(&m.mat) <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn class_invariant_transforms_are_scalar() {
        let q = GroupDistribution::lazy_transposition(4).unwrap();
        for shape in partitions_of(4) {
            let rep = OrthogonalRepresentation::build(&shape, 2048).unwrap();
            let m = fourier_transform(&q, &rep).unwrap().mat;
            let s = class_scalar(&q, &shape).unwrap();
            let expected = Mat::identity(rep.dim()).scale_re(s);
            assert!(m.sub(&expected).max_abs() < 1e-9, "shape {shape}");
        }
        // Scalar route refuses non-invariant input.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_distribution(3, &mut rng);
        assert!(class_scalar(&q, &Partition::from_str("2+1").unwrap()).is_err());
    }

    #[test]
    fn json_roundtrip_and_rejects_unknown_keys() {
        let q = example_q1();
        let text = q.to_json();
        let back = GroupDistribution::from_json(&text).unwrap();
        assert!(q.max_weight_diff(&back) < 1e-15);
        assert!(GroupDistribution::from_json(r#"{"n":3,"support":[],"extra":1}"#).is_err());
        assert!(GroupDistribution::from_json(r#"{"n":3,"support":[{"perm":[0,1,2],"p":0.5}]}"#)
            .is_err());
    }

    #[test]
    fn sampler_reproduces_weights_and_is_deterministic() {
        let q = example_q1();
        let sampler = Sampler::new(&q);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts: BTreeMap<Permutation, usize> = BTreeMap::new();
        let draws = 200_000;
        for _ in 0..draws {
            *counts.entry(sampler.sample(&mut rng).clone()).or_insert(0) += 1;
        }
        for (g, w) in q.iter() {
            let freq = counts[g] as f64 / draws as f64;
            assert!((freq - w).abs() < 5e-3, "{g}: {freq} vs {w}");
        }
        // Same seed, same first draws.
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..64 {
            assert_eq!(sampler.sample(&mut a), sampler.sample(&mut b));
        }
    }

    #[test]
    fn convolve_power_matches_iterated() {
        let q = example_q2();
        let twice = q.convolve(&q).unwrap();
        assert!(q.convolve_power(2).unwrap().max_weight_diff(&twice) < 1e-15);
        let zero = q.convolve_power(0).unwrap();
        assert!(zero.max_weight_diff(&GroupDistribution::delta(Permutation::identity(3))) < 1e-15);
    }
}
