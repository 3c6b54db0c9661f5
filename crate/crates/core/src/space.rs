//! Homogeneous spaces of S_n: tabloids (ordered set partitions of the
//! cards), tours (directed cyclic orders), and the group itself. Points
//! are short byte words; actions apply a permutation to the labels.

use crate::error::{Error, Result};
use crate::perm::{enumerate_group, factorial, Permutation};
use crate::symrep::partition::Partition;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use std::collections::HashMap;
use std::fmt;

/// Default ceiling on explicit point enumeration.
pub const DEFAULT_SPACE_CAP: usize = 50_000;

/// A point: the row-membership word of a tabloid (`word[card] = row`), a
/// tour as the city sequence starting at city 0, or a one-line permutation
/// word.
pub type Point = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// Tabloids of shape μ: assignments of n cards to rows of sizes μ_i.
    Tabloids(Partition),
    /// Directed tours through n cities, up to rotation.
    Tours(usize),
    /// The group S_n acting on itself by left multiplication.
    Group(usize),
}

impl SpaceKind {
    pub fn degree(&self) -> usize {
        match self {
            SpaceKind::Tabloids(mu) => mu.n(),
            SpaceKind::Tours(n) | SpaceKind::Group(n) => *n,
        }
    }

    /// Number of points, exactly.
    pub fn size(&self) -> BigUint {
        match self {
            SpaceKind::Tabloids(mu) => {
                let mut denom = BigUint::one();
                for &p in mu.parts() {
                    denom *= factorial(p);
                }
                factorial(mu.n()) / denom
            }
            SpaceKind::Tours(n) => factorial(n.saturating_sub(1)),
            SpaceKind::Group(n) => factorial(*n),
        }
    }

    /// A canonical starting point: cards dealt in order, the identity tour,
    /// or the identity permutation.
    pub fn origin(&self) -> Point {
        match self {
            SpaceKind::Tabloids(mu) => {
                let mut word = Vec::with_capacity(mu.n());
                for (row, &len) in mu.parts().iter().enumerate() {
                    word.extend(std::iter::repeat(row as u8).take(len));
                }
                word
            }
            SpaceKind::Tours(n) | SpaceKind::Group(n) => (0..*n as u8).collect(),
        }
    }

    /// The left action of g. Tabloids: card g(c) lands in the row card c
    /// occupied. Tours: relabel cities and re-anchor at city 0. Group:
    /// left-multiply.
    pub fn act(&self, g: &Permutation, x: &Point) -> Point {
        debug_assert_eq!(g.degree(), x.len());
        match self {
            SpaceKind::Tabloids(_) => {
                let mut y = vec![0u8; x.len()];
                for (c, &row) in x.iter().enumerate() {
                    y[g.apply(c)] = row;
                }
                y
            }
            SpaceKind::Tours(_) => {
                let relabeled: Vec<u8> = x.iter().map(|&c| g.apply(c as usize) as u8).collect();
                canonical_rotation(&relabeled)
            }
            SpaceKind::Group(_) => x.iter().map(|&i| g.apply(i as usize) as u8).collect(),
        }
    }
}

fn canonical_rotation(tour: &[u8]) -> Point {
    let zero = tour
        .iter()
        .position(|&c| c == 0)
        .expect("tour contains city 0");
    let mut out = Vec::with_capacity(tour.len());
    out.extend_from_slice(&tour[zero..]);
    out.extend_from_slice(&tour[..zero]);
    out
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Tabloids(mu) => write!(f, "tabloids:{mu}"),
            SpaceKind::Tours(n) => write!(f, "tours:{n}"),
            SpaceKind::Group(n) => write!(f, "group:{n}"),
        }
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceKind> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("space {s:?} lacks ':'")))?;
        match kind {
            "tabloids" => Ok(SpaceKind::Tabloids(arg.parse()?)),
            "tours" => {
                let n: usize = arg
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad tour size {arg:?}: {e}")))?;
                if n < 3 {
                    return Err(Error::invalid("tours", "need at least 3 cities"));
                }
                Ok(SpaceKind::Tours(n))
            }
            "group" => {
                let n: usize = arg
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad degree {arg:?}: {e}")))?;
                Ok(SpaceKind::Group(n))
            }
            other => Err(Error::Parse(format!("unknown space kind {other:?}"))),
        }
    }
}

/// A fully materialized space: points in canonical order plus the inverse
/// index. Tabloids are ordered colexicographically by row-membership word,
/// which lines the (2,1) basis up as singleton {0}, {1}, {2}.
pub struct EnumeratedSpace {
    kind: SpaceKind,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl EnumeratedSpace {
    pub fn new(kind: SpaceKind, cap: usize) -> Result<EnumeratedSpace> {
        let size = kind.size();
        if size > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "space enumeration",
                requested: size.to_u128().unwrap_or(u128::MAX),
                cap: cap as u128,
            });
        }
        let points = match &kind {
            SpaceKind::Tabloids(mu) => enumerate_tabloids(mu),
            SpaceKind::Tours(n) => enumerate_tours(*n),
            SpaceKind::Group(n) => enumerate_group(*n)?
                .into_iter()
                .map(|p| p.images().map(|i| i as u8).collect())
                .collect(),
        };
        debug_assert_eq!(BigUint::from(points.len()), size);
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(EnumeratedSpace {
            kind,
            points,
            index,
        })
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn index_of(&self, p: &Point) -> usize {
        self.index[p]
    }

    pub fn origin_index(&self) -> usize {
        self.index_of(&self.kind.origin())
    }

    /// The action of g as a map on indices: `map[x] = index(g·x)`.
    pub fn action_indices(&self, g: &Permutation) -> Vec<usize> {
        self.points
            .iter()
            .map(|x| self.index[&self.kind.act(g, x)])
            .collect()
    }
}

/// Row-membership words with the given row sizes, ascending in
/// colexicographic order (last position varies slowest).
fn enumerate_tabloids(mu: &Partition) -> Vec<Point> {
    let n = mu.n();
    let mut budget: Vec<usize> = mu.parts().to_vec();
    let mut word = vec![0u8; n];
    let mut out = Vec::new();
    fn rec(pos: isize, word: &mut [u8], budget: &mut [usize], out: &mut Vec<Point>) {
        if pos < 0 {
            out.push(word.to_vec());
            return;
        }
        for row in 0..budget.len() {
            if budget[row] == 0 {
                continue;
            }
            budget[row] -= 1;
            word[pos as usize] = row as u8;
            rec(pos - 1, word, budget, out);
            budget[row] += 1;
        }
    }
    rec(n as isize - 1, &mut word, &mut budget, &mut out);
    out
}

/// All (n−1)! tours anchored at city 0: `[0]` followed by each permutation
/// of the remaining cities, in lexicographic order.
fn enumerate_tours(n: usize) -> Vec<Point> {
    let mut rest: Vec<u8> = (1..n as u8).collect();
    let mut out = Vec::new();
    loop {
        let mut tour = Vec::with_capacity(n);
        tour.push(0);
        tour.extend_from_slice(&rest);
        out.push(tour);
        if !next_word(&mut rest) {
            break;
        }
    }
    out
}

fn next_word(a: &mut [u8]) -> bool {
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
