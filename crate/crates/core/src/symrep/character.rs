//! Irreducible characters of S_n: exact integer values via the
//! Murnaghan–Nakayama rule, the closed-form two-row evaluation on k-cycle
//! classes, and multiplicity counts by averaging characters over point
//! stabilizers (Frobenius reciprocity).

use super::partition::{partitions_of, Partition};
use crate::error::{Error, Result};
use crate::perm::{cycle_types, factorial, CycleType, Permutation};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::{HashMap, HashSet};

/// χ_λ evaluated on a conjugacy class, by recursive border-strip removal.
///
/// The shape is tracked as a beta-set (first-column hook lengths): removing
/// a border strip of length k moves one bead down by k, and the strip
/// height is the number of beads jumped over.
pub fn character_value(lambda: &Partition, class: &CycleType) -> i64 {
    assert_eq!(
        lambda.n(),
        class.degree(),
        "character: partition of {} against class of {}",
        lambda.n(),
        class.degree()
    );
    let cycles = class.lengths();
    let mut memo = HashMap::new();
    strip_rec(lambda.parts(), &cycles, 0, &mut memo)
}

fn strip_rec(
    parts: &[usize],
    cycles: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), i64>,
) -> i64 {
    if idx == cycles.len() {
        debug_assert!(parts.is_empty());
        return 1;
    }
    let key = (parts.to_vec(), idx);
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let k = cycles[idx];
    let m = parts.len();
    let beta: Vec<usize> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (m - 1 - i))
        .collect();
    let occupied: HashSet<usize> = beta.iter().copied().collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || occupied.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let height = beta.iter().filter(|&&o| o < b && o > target).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next: Vec<usize> = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let rows = next.len();
        let next_parts: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &v)| v - (rows - 1 - j))
            .take_while(|&p| p > 0)
            .collect();
        total += sign * strip_rec(&next_parts, cycles, idx + 1, memo);
    }
    memo.insert(key, total);
    total
}

/// Binomial coefficient that vanishes outside 0 ≤ j ≤ m, as the two-row
/// character formula requires.
fn binom(m: usize, j: i64) -> BigInt {
    if j < 0 || j as usize > m {
        return BigInt::zero();
    }
    let j = j as usize;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for t in 0..j.min(m - j) {
        num *= BigUint::from(m - t);
        den *= BigUint::from(t + 1);
    }
    BigInt::from(num / den)
}

/// χ of the two-row irreducible (a, b) on the class of a single k-cycle:
/// [C(n−k, a) − C(n−k, a+1)] + [C(n−k, b) − C(n−k, b−1)], with n = a + b.
///
/// Exact in big integers — the n = 52 bound evaluation needs values far
/// beyond 64 bits.
pub fn character_two_row(a: usize, b: usize, k: usize) -> Result<BigInt> {
    if b > a {
        return Err(Error::invalid("two-row shape", format!("({a}, {b})")));
    }
    let n = a + b;
    if k == 0 || k > n {
        return Err(Error::invalid("cycle length", format!("k={k} for n={n}")));
    }
    let m = n - k;
    Ok(binom(m, a as i64) - binom(m, a as i64 + 1) + binom(m, b as i64) - binom(m, b as i64 - 1))
}

/// Full character table of S_n for n small enough to enumerate classes.
pub struct CharacterTable {
    n: usize,
    shapes: Vec<Partition>,
    classes: Vec<CycleType>,
    /// values[shape index][class index]
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<CharacterTable> {
        if n > crate::perm::EXHAUSTIVE_GROUP_LIMIT {
            return Err(Error::CapExceeded {
                what: "character table degree",
                requested: n as u128,
                cap: crate::perm::EXHAUSTIVE_GROUP_LIMIT as u128,
            });
        }
        let shapes = partitions_of(n);
        let classes = cycle_types(n);
        let values = shapes
            .iter()
            .map(|s| classes.iter().map(|c| character_value(s, c)).collect())
            .collect();
        Ok(CharacterTable {
            n,
            shapes,
            classes,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn value(&self, shape: &Partition, class: &CycleType) -> i64 {
        let si = self
            .shapes
            .iter()
            .position(|s| s == shape)
            .expect("shape of the table's degree");
        let ci = self
            .classes
            .iter()
            .position(|c| c == class)
            .expect("class of the table's degree");
        self.values[si][ci]
    }

    /// First orthogonality relation, exactly:
    /// Σ_C |C| χ_λ(C) χ_μ(C) = δ_{λμ} n!.
    pub fn check_orthogonality(&self) -> Result<()> {
        let order = BigInt::from(factorial(self.n));
        let sizes: Vec<BigInt> = self
            .classes
            .iter()
            .map(|c| BigInt::from(c.class_size()))
            .collect();
        for (i, row_i) in self.values.iter().enumerate() {
            for (j, row_j) in self.values.iter().enumerate() {
                let mut acc = BigInt::zero();
                for (ci, size) in sizes.iter().enumerate() {
                    acc += size * BigInt::from(row_i[ci]) * BigInt::from(row_j[ci]);
                }
                let want = if i == j { order.clone() } else { BigInt::zero() };
                if acc != want {
                    return Err(Error::invalid(
                        "character table",
                        format!(
                            "orthogonality fails for {} vs {}: {} != {}",
                            self.shapes[i], self.shapes[j], acc, want
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Checks that the listed elements form a subgroup (closure, identity,
/// inverses) of S_n.
pub fn verify_subgroup(elements: &[Permutation]) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::NotASubgroup);
    }
    let n = elements[0].degree();
    let set: HashSet<&Permutation> = elements.iter().collect();
    if set.len() != elements.len() {
        return Err(Error::NotASubgroup);
    }
    if !set.contains(&Permutation::identity(n)) {
        return Err(Error::NotASubgroup);
    }
    for p in elements {
        if p.degree() != n || !set.contains(&p.inverse()) {
            return Err(Error::NotASubgroup);
        }
        for q in elements {
            if !set.contains(&p.compose(q)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    Ok(())
}

/// Multiplicity of S^λ in the permutation module on G/H, as the average of
/// χ_λ over H. The average must come out to an exact nonnegative integer;
/// anything else signals a character bug and is reported as an error.
pub fn frobenius_reciprocity_multiplicity(
    lambda: &Partition,
    subgroup: &[Permutation],
) -> Result<u64> {
    verify_subgroup(subgroup)?;
    let n = subgroup[0].degree();
    if lambda.n() != n {
        return Err(Error::DegreeMismatch(lambda.n(), n));
    }
    // Group by cycle type so each character value is computed once.
    let mut class_counts: HashMap<CycleType, i64> = HashMap::new();
    for h in subgroup {
        *class_counts.entry(h.cycle_type()).or_insert(0) += 1;
    }
    let mut total = 0i64;
    for (class, count) in &class_counts {
        total += count * character_value(lambda, class);
    }
    let order = subgroup.len() as i64;
    if total < 0 || total % order != 0 {
        return Err(Error::NonIntegralMultiplicity(total as f64 / order as f64));
    }
    Ok((total / order) as u64)
}
