//! Young tableaux: standard tableau enumeration (the basis of each
//! irreducible) and Kostka numbers (the multiplicities handed out by
//! Young's rule).

use super::partition::{partitions_of, Partition};
use crate::perm::factorial;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// A standard Young tableau as rows of entries 1..=n.
pub type Tableau = Vec<Vec<u8>>;

/// All standard tableaux of the given shape, in a fixed deterministic order
/// (lexicographic in the row-insertion word). Their count equals the hook
/// length dimension, which callers may rely on.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let n = shape.n();
    let mut rows: Tableau = shape.parts().iter().map(|_| Vec::new()).collect();
    let mut out = Vec::new();
    fill(shape, 1, n as u8, &mut rows, &mut out);
    out
}

fn fill(shape: &Partition, next: u8, n: u8, rows: &mut Tableau, out: &mut Vec<Tableau>) {
    if next > n {
        out.push(rows.clone());
        return;
    }
    for r in 0..rows.len() {
        let len = rows[r].len();
        let row_open = len < shape.part(r);
        let col_ok = r == 0 || rows[r - 1].len() > len;
        if row_open && col_ok {
            rows[r].push(next);
            fill(shape, next + 1, n, rows, out);
            rows[r].pop();
        }
    }
}

/// Kostka number K_{λμ}: semistandard tableaux of shape λ and content μ.
///
/// Computed by peeling the cells holding the largest entry, which always
/// form a horizontal strip; memoized on (inner shape, entries remaining).
pub fn kostka(lambda: &Partition, mu: &Partition) -> BigUint {
    if lambda.n() != mu.n() {
        return BigUint::zero();
    }
    // Young's rule support condition: K vanishes unless λ dominates μ.
    if !mu.dominated_by(lambda) {
        return BigUint::zero();
    }
    let mut memo = HashMap::new();
    peel(lambda.parts(), mu.parts(), mu.rows(), &mut memo)
}

fn peel(
    lambda: &[usize],
    mu: &[usize],
    k: usize,
    memo: &mut HashMap<(Vec<usize>, usize), BigUint>,
) -> BigUint {
    if k == 0 {
        return if lambda.is_empty() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    let key = (lambda.to_vec(), k);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let strip = mu[k - 1];
    // Enumerate inner shapes ν with λ/ν a horizontal strip of size `strip`:
    // ν_i ranges over [λ_{i+1}, λ_i] (no two removed cells share a column),
    // removals summing to the strip size.
    let mut total = BigUint::zero();
    let mut nu = lambda.to_vec();
    strip_rows(lambda, 0, strip, &mut nu, &mut |nu| {
        let trimmed: Vec<usize> = nu.iter().copied().take_while(|&p| p > 0).collect();
        total += peel(&trimmed, mu, k - 1, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn strip_rows(
    lambda: &[usize],
    row: usize,
    left: usize,
    nu: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if row == lambda.len() {
        if left == 0 {
            emit(nu);
        }
        return;
    }
    let lower = lambda.get(row + 1).copied().unwrap_or(0);
    let max_removal = (lambda[row] - lower).min(left);
    for removal in 0..=max_removal {
        nu[row] = lambda[row] - removal;
        strip_rows(lambda, row + 1, left - removal, nu, emit);
    }
    nu[row] = lambda[row];
}

/// Decomposition of the tabloid permutation module M^μ into irreducibles:
/// S^λ appears with multiplicity K_{λμ}, for λ dominating μ (Young's rule).
pub fn young_rule_multiplicities(mu: &Partition) -> Vec<(Partition, BigUint)> {
    partitions_of(mu.n())
        .into_iter()
        .filter_map(|lambda| {
            let k = kostka(&lambda, mu);
            if k.is_zero() {
                None
            } else {
                Some((lambda, k))
            }
        })
        .collect()
}

/// Number of tabloids of shape μ: n! / Π μ_i!.
pub fn tabloid_count(mu: &Partition) -> BigUint {
    let mut denom = BigUint::one();
    for &p in mu.parts() {
        denom *= factorial(p);
    }
    factorial(mu.n()) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::str::FromStr;

    /// Direct reference count: fill the diagram cell by cell with entries
    /// 1..=rows(μ), rows weakly increasing, columns strictly increasing,
    /// exactly μ_v copies of entry v+1. Exponential, but plenty for n ≤ 7.
    fn kostka_brute(lambda: &Partition, mu: &Partition) -> u64 {
        fn go(
            shape: &Partition,
            cells: &[(usize, usize)],
            idx: usize,
            grid: &mut Vec<Vec<u8>>,
            budget: &mut Vec<usize>,
        ) -> u64 {
            if idx == cells.len() {
                return 1;
            }
            let (i, j) = cells[idx];
            let mut count = 0;
            for v in 0..budget.len() {
                if budget[v] == 0 {
                    continue;
                }
                let e = v as u8 + 1;
                if j > 0 && grid[i][j - 1] > e {
                    continue;
                }
                if i > 0 && grid[i - 1][j] >= e {
                    continue;
                }
                grid[i][j] = e;
                budget[v] -= 1;
                count += go(shape, cells, idx + 1, grid, budget);
                budget[v] += 1;
            }
            grid[i][j] = 0;
            count
        }
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| (i, j)))
            .collect();
        let mut grid = vec![vec![0u8; lambda.part(0)]; lambda.rows()];
        let mut budget = mu.parts().to_vec();
        go(lambda, &cells, 0, &mut grid, &mut budget)
    }

    #[test]
    fn kostka_matches_direct_enumeration() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    let fast = kostka(&lambda, &mu).to_u64().unwrap();
                    let brute = kostka_brute(&lambda, &mu);
                    assert_eq!(fast, brute, "λ={lambda}, μ={mu}");
                }
            }
        }
    }

    #[test]
    fn kostka_frozen_values() {
        let k = |l: &str, m: &str| {
            kostka(
                &Partition::from_str(l).unwrap(),
                &Partition::from_str(m).unwrap(),
            )
            .to_u64()
            .unwrap()
        };
        assert_eq!(k("3+2", "2+2+1"), 2);
        assert_eq!(k("4+1", "2+2+1"), 2);
        assert_eq!(k("2+2", "2+2"), 1, "K_{{λλ}} = 1");
        assert_eq!(k("5", "2+2+1"), 1, "single row always 1");
        assert_eq!(k("2+2+1", "3+2"), 0, "λ must dominate μ");
    }

    #[test]
    fn young_rule_examples() {
        let mu = Partition::from_str("2+1").unwrap();
        let decomp = young_rule_multiplicities(&mu);
        assert_eq!(decomp.len(), 2);
        assert_eq!(decomp[0].0, Partition::from_str("3").unwrap());
        assert_eq!(decomp[0].1.to_u64(), Some(1));
        assert_eq!(decomp[1].0, mu);
        assert_eq!(decomp[1].1.to_u64(), Some(1));

        // Regular representation: multiplicities are the dimensions.
        let reg = Partition::one_column(3);
        let decomp = young_rule_multiplicities(&reg);
        for (lambda, mult) in decomp {
            assert_eq!(mult, lambda.dim(), "λ={lambda}");
        }

        let trivial = Partition::one_row(5);
        assert_eq!(
            young_rule_multiplicities(&trivial),
            vec![(trivial.clone(), BigUint::one())]
        );
    }

    #[test]
    fn multiplicities_account_for_module_dimension() {
        for n in 1..=7 {
            for mu in partitions_of(n) {
                let total: BigUint = young_rule_multiplicities(&mu)
                    .iter()
                    .map(|(lambda, mult)| mult * lambda.dim())
                    .sum();
                assert_eq!(total, tabloid_count(&mu), "μ={mu}");
            }
        }
    }

    #[test]
    fn standard_tableaux_count_is_the_dimension() {
        for n in 1..=6 {
            for shape in partitions_of(n) {
                let tabs = standard_tableaux(&shape);
                assert_eq!(
                    BigUint::from(tabs.len()),
                    shape.dim(),
                    "shape {shape}"
                );
                // Each is genuinely standard.
                for t in &tabs {
                    for (i, row) in t.iter().enumerate() {
                        assert!(row.windows(2).all(|w| w[0] < w[1]));
                        if i > 0 {
                            for (j, &e) in row.iter().enumerate() {
                                assert!(t[i - 1][j] < e);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_row_kostka_is_zero_one() {
        // For two-row content, K is 1 exactly when λ dominates μ: the
        // pattern behind the tabloid-module bound summation.
        let mu = Partition::from_str("4+3").unwrap();
        for lambda in partitions_of(7) {
            let expect = if mu.dominated_by(&lambda) && lambda.rows() <= 2 {
                1
            } else {
                0
            };
            assert_eq!(kostka(&lambda, &mu).to_u64(), Some(expect), "λ={lambda}");
        }
    }
}
