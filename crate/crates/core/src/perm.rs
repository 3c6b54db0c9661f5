//! Permutations of `{0..n-1}` in one-line notation, cycle types, and
//! exhaustive enumeration of small symmetric groups.
//!
//! Composition convention, fixed once for the whole crate: `compose(p, q)`
//! applies `q` first, so `compose(p, q).apply(i) = p.apply(q.apply(i))`.
//! Walks multiply the newest step on the left.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

/// Hard cap on exhaustive S_n enumeration (8! = 40320 elements).
pub const EXHAUSTIVE_GROUP_LIMIT: usize = 8;

/// A permutation in one-line notation over 0-based points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds from one-line images, validating bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        if n > u8::MAX as usize + 1 {
            return Err(Error::invalid("permutation", "degree above 256"));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::invalid(
                    "permutation",
                    format!("images {:?} are not a bijection on 0..{}", images, n),
                ));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint-cycle data (cycles need not cover
    /// all points; fixed points are implicit).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from >= n || touched[from] {
                    return Err(Error::invalid(
                        "cycle notation",
                        format!("point {from} out of range or repeated"),
                    ));
                }
                touched[from] = true;
                images[from] = to;
            }
        }
        Permutation::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u8 == im)
    }

    /// Group product; `q` acts first.
    pub fn compose(&self, q: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            q.degree(),
            "compose: degree {} vs {}",
            self.degree(),
            q.degree()
        );
        Permutation {
            images: q.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Disjoint cycles in canonical form (each cycle led by its smallest
    /// point, cycles sorted by leader); fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut counts = vec![0usize; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            loop {
                seen[cur] = true;
                len += 1;
                cur = self.apply(cur);
                if cur == start {
                    break;
                }
            }
            counts[len - 1] += 1;
        }
        CycleType { counts }
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self
            .cycle_type()
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i * c)
            .sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, im) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{im}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// Accepts one-line syntax `[0,2,1]` and 0-based cycle syntax
    /// `(0 1)(2 3)`; cycle syntax needs the degree appended as `@n` only
    /// when trailing fixed points exist, e.g. `(0 1)@4`.
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unterminated one-line form: {s}")))?;
            let images = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad index {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Permutation::from_images(&images);
        }
        if s.starts_with('(') {
            let (cycles_part, degree_part) = match s.rsplit_once('@') {
                Some((c, d)) => (c, Some(d)),
                None => (s, None),
            };
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut maxpt = 0usize;
            for chunk in cycles_part.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("bad cycle chunk {chunk:?}")))?;
                let pts = body
                    .split(|ch: char| ch == ' ' || ch == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                maxpt = maxpt.max(pts.iter().copied().max().unwrap_or(0));
                if pts.len() > 1 {
                    cycles.push(pts);
                }
            }
            let n = match degree_part {
                Some(d) => d
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad degree {d:?}: {e}")))?,
                None => maxpt + 1,
            };
            return Permutation::from_cycles(n, &cycles);
        }
        Err(Error::Parse(format!(
            "expected [i0,i1,...] or (a b)(c d) syntax, got {s:?}"
        )))
    }
}

/// Cycle type of a permutation: `counts[j-1]` is the number of j-cycles.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    pub fn from_counts(counts: Vec<usize>) -> Result<CycleType> {
        let n: usize = counts.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum();
        if n != counts.len() {
            return Err(Error::invalid(
                "cycle type",
                format!("counts {counts:?} sum to {n}, want {}", counts.len()),
            ));
        }
        Ok(CycleType { counts })
    }

    /// Builds from the multiset of nontrivial cycle lengths, padding with
    /// fixed points: `from_cycle_lengths(52, &[2])` is the transposition
    /// class of S_52.
    pub fn from_cycle_lengths(n: usize, lengths: &[usize]) -> Result<CycleType> {
        let mut counts = vec![0usize; n];
        let mut moved = 0usize;
        for &len in lengths {
            if len == 0 || len > n {
                return Err(Error::invalid("cycle type", format!("cycle length {len}")));
            }
            counts[len - 1] += 1;
            moved += len;
        }
        if moved > n {
            return Err(Error::invalid(
                "cycle type",
                format!("cycle lengths {lengths:?} exceed degree {n}"),
            ));
        }
        counts[0] += n - moved;
        CycleType::from_counts(counts)
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Cycle lengths in nonincreasing order (a partition of n).
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &c) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat(i + 1).take(c));
        }
        out
    }

    /// A concrete permutation with this cycle type (cycles laid out on
    /// consecutive points).
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut next = 0usize;
        for len in self.lengths() {
            for k in 0..len {
                images[next + k] = next + (k + 1) % len;
            }
            next += len;
        }
        Permutation::from_images(&images).expect("representative is a bijection")
    }

    /// |conjugacy class| = n! / (prod_j j^{n_j} n_j!).
    pub fn class_size(&self) -> BigUint {
        let n = self.degree();
        let mut denom = BigUint::one();
        for (i, &c) in self.counts.iter().enumerate() {
            let j = i + 1;
            denom *= BigUint::from(j).pow(c as u32);
            denom *= factorial(c);
        }
        factorial(n) / denom
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All n! permutations in lexicographic one-line order.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    if n > EXHAUSTIVE_GROUP_LIMIT {
        return Err(Error::CapExceeded {
            what: "exhaustive group enumeration degree",
            requested: n as u128,
            cap: EXHAUSTIVE_GROUP_LIMIT as u128,
        });
    }
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation::from_images(&images)?);
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(out)
}

/// All permutations with the given cycle type, without touching the rest of
/// S_n. Needed for class-uniform distributions at degrees where the full
/// group is far out of reach (the transposition class of S_52 has 1326
/// elements; S_52 has ~8e67).
pub fn enumerate_class(t: &CycleType, support_cap: usize) -> Result<Vec<Permutation>> {
    let size = t.class_size();
    if size > BigUint::from(support_cap) {
        return Err(Error::CapExceeded {
            what: "conjugacy class support",
            requested: size.try_into().unwrap_or(u128::MAX),
            cap: support_cap as u128,
        });
    }
    let n = t.degree();
    let lengths = t.lengths();
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fill_cycles(&lengths, 0, 0, &mut used, &mut images, &mut out, n);
    out.sort();
    Ok(out)
}

/// Recursively chooses the support of each cycle. Each permutation is built
/// exactly once: a cycle is written with its smallest point first (leader),
/// and among cycles of equal length the leaders increase (`min_leader`
/// carries the constraint).
fn fill_cycles(
    lengths: &[usize],
    li: usize,
    min_leader: usize,
    used: &mut [bool],
    images: &mut [usize],
    out: &mut Vec<Permutation>,
    n: usize,
) {
    if li == lengths.len() || lengths[li] == 1 {
        // Remaining points are all fixed (lengths is nonincreasing).
        out.push(Permutation::from_images(images).expect("constructed bijection"));
        return;
    }
    let len = lengths[li];
    for leader in min_leader..n {
        if used[leader] {
            continue;
        }
        used[leader] = true;
        // The leader is the cycle minimum, so the rest come from above it.
        let mut pool: Vec<usize> = (leader + 1..n).filter(|&i| !used[i]).collect();
        let next_min = if li + 1 < lengths.len() && lengths[li + 1] == len {
            leader + 1
        } else {
            0
        };
        choose_cycle(
            &mut pool,
            &mut Vec::new(),
            len - 1,
            leader,
            (lengths, li, next_min),
            used,
            images,
            out,
            n,
        );
        used[leader] = false;
    }
}

#[allow(clippy::too_many_arguments)]
fn choose_cycle(
    pool: &mut Vec<usize>,
    picked: &mut Vec<usize>,
    remaining: usize,
    leader: usize,
    next: (&[usize], usize, usize),
    used: &mut [bool],
    images: &mut [usize],
    out: &mut Vec<Permutation>,
    n: usize,
) {
    if remaining == 0 {
        // Wire up the cycle leader -> picked[0] -> ... -> leader.
        let mut prev = leader;
        for &p in picked.iter() {
            images[prev] = p;
            used[p] = true;
            prev = p;
        }
        images[prev] = leader;
        let (lengths, li, min_leader) = next;
        fill_cycles(lengths, li + 1, min_leader, used, images, out, n);
        for &p in picked.iter() {
            used[p] = false;
            images[p] = p;
        }
        images[leader] = leader;
        return;
    }
    for idx in 0..pool.len() {
        let p = pool.remove(idx);
        picked.push(p);
        choose_cycle(pool, picked, remaining - 1, leader, next, used, images, out, n);
        picked.pop();
        pool.insert(idx, p);
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All cycle types of S_n (equivalently, partitions of n as length
/// multisets), in a deterministic order.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    gen_partitions(n, n, &mut parts, &mut out);
    out
}

fn gen_partitions(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<CycleType>) {
    if remaining == 0 {
        let n: usize = acc.iter().sum();
        out.push(CycleType::from_cycle_lengths(n, acc).expect("valid partition"));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        acc.push(part);
        gen_partitions(remaining - part, part, acc, out);
        acc.pop();
    }
}
