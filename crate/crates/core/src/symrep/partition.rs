//! Integer partitions: the index set for both the irreducible
//! representations of S_n and the permutation modules on tabloids.

use crate::error::{Error, Result};
use crate::lognum::LogNum;
use crate::perm::{factorial, CycleType};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

/// A partition of n: nonincreasing positive parts.
///
/// Text form is `+`-separated parts, e.g. `26+26` or `3+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition", "zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(
                "partition",
                format!("parts {parts:?} are not nonincreasing"),
            ));
        }
        Ok(Partition { parts })
    }

    /// The one-row partition (n); indexes the trivial representation.
    pub fn one_row(n: usize) -> Partition {
        Partition { parts: vec![n] }
    }

    /// The one-column partition (1,...,1); indexes the sign representation.
    pub fn one_column(n: usize) -> Partition {
        Partition {
            parts: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition { parts: vec![] };
        }
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// `self` is dominated by `other`: every prefix sum of `self` is at most
    /// the corresponding prefix sum of `other`. Both must partition the
    /// same n.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.n(), other.n());
        let rows = self.rows().max(other.rows());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..rows {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Hook length of cell (i, j), 0-based.
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts.iter().skip(i + 1).filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Dimension of the irreducible representation S^lambda, by the hook
    /// length formula n! / prod(hooks).
    pub fn dim(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                denom *= BigUint::from(self.hook(i, j));
            }
        }
        factorial(self.n()) / denom
    }

    /// `dim` as a log-space number, safe for partitions of large n.
    pub fn dim_log(&self) -> LogNum {
        LogNum::from_biguint(&self.dim())
    }

    /// Contents of the cells in row-major order: content(i, j) = j - i.
    /// These drive the orthogonal-representation axial distances.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push(j as i64 - i as i64);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let parts = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad partition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<&CycleType> for Partition {
    fn from(t: &CycleType) -> Partition {
        Partition { parts: t.lengths() }
    }
}

impl From<&Partition> for CycleType {
    fn from(p: &Partition) -> CycleType {
        CycleType::from_cycle_lengths(p.n(), p.parts()).expect("partition is a valid cycle type")
    }
}

/// All partitions of n, first `(n)`, last `(1^n)`, in descending
/// lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    gen(n, n, &mut acc, &mut out);
    out
}

fn gen(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: acc.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        acc.push(part);
        gen(remaining - part, part, acc, out);
        acc.pop();
    }
}
