//! Young's orthogonal representation: explicit real orthogonal matrices for
//! each irreducible of S_n, built on the standard-tableau basis.
//!
//! The generator for the adjacent transposition (i, i+1) acts on the basis
//! vector of a tableau T through the axial distance d between the cells
//! holding i+1 and i+2 (1-based entries): diagonal 1/d, and when the swap
//! of those entries is again standard, off-diagonal sqrt(1 - 1/d²) to the
//! swapped tableau. Arbitrary group elements come from factoring into
//! adjacent transpositions.

use super::partition::Partition;
use super::tableau::{standard_tableaux, Tableau};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::perm::Permutation;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// Default ceiling on irreducible dimension for explicit matrices.
pub const DEFAULT_IRREP_DIM_CAP: usize = 2048;

pub struct OrthogonalRepresentation {
    shape: Partition,
    tableaux: Vec<Tableau>,
    /// gens[i] is the matrix of the adjacent transposition (i, i+1).
    gens: Vec<Mat>,
}

impl OrthogonalRepresentation {
    pub fn build(shape: &Partition, dim_cap: usize) -> Result<OrthogonalRepresentation> {
        let dim_big = shape.dim();
        let dim = dim_big.to_usize().filter(|&d| d <= dim_cap).ok_or({
            Error::CapExceeded {
                what: "irreducible dimension",
                requested: dim_big.to_u128().unwrap_or(u128::MAX),
                cap: dim_cap as u128,
            }
        })?;
        let tableaux = standard_tableaux(shape);
        debug_assert_eq!(tableaux.len(), dim);
        let index: HashMap<&Tableau, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = shape.n();
        let mut gens = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let low = (i + 1) as u8; // entries swapped by (i, i+1), 1-based
            let high = (i + 2) as u8;
            let mut g = Mat::zeros(dim, dim);
            for (t, tab) in tableaux.iter().enumerate() {
                let (r1, c1) = locate(tab, low);
                let (r2, c2) = locate(tab, high);
                let content = |r: usize, c: usize| c as i64 - r as i64;
                let d = content(r2, c2) - content(r1, c1);
                let inv = 1.0 / d as f64;
                g[(t, t)] = Complex64::new(inv, 0.0);
                if d.unsigned_abs() > 1 {
                    let mut swapped = tab.clone();
                    swapped[r1][c1] = high;
                    swapped[r2][c2] = low;
                    let partner = index[&swapped];
                    g[(partner, t)] = Complex64::new((1.0 - inv * inv).sqrt(), 0.0);
                }
            }
            gens.push(g);
        }
        Ok(OrthogonalRepresentation {
            shape: shape.clone(),
            tableaux,
            gens,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.n()
    }

    pub fn generator(&self, i: usize) -> &Mat {
        &self.gens[i]
    }

    /// Matrix of an arbitrary permutation, by bubble-sorting its one-line
    /// word: each swap of a descent at position j contributes the generator
    /// for (j, j+1) on the left.
    pub fn matrix(&self, g: &Permutation) -> Mat {
        assert_eq!(
            g.degree(),
            self.degree(),
            "irrep of S_{} applied to a degree-{} permutation",
            self.degree(),
            g.degree()
        );
        let mut word: Vec<usize> = g.images().collect();
        let mut m = Mat::identity(self.dim());
        loop {
            let descent = (0..word.len().saturating_sub(1)).find(|&j| word[j] > word[j + 1]);
            match descent {
                None => break,
                Some(j) => {
                    word.swap(j, j + 1);
                    m = self.gens[j].mul(&m);
                }
            }
        }
        m
    }
}

fn locate(tab: &Tableau, value: u8) -> (usize, usize) {
    for (r, row) in tab.iter().enumerate() {
        if let Some(c) = row.iter().position(|&e| e == value) {
            return (r, c);
        }
    }
    unreachable!("standard tableau holds every entry once")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;
    use crate::symrep::character::character_value;
    use crate::symrep::partition::partitions_of;
    use std::str::FromStr;

    fn build(shape: &str) -> OrthogonalRepresentation {
        OrthogonalRepresentation::build(&Partition::from_str(shape).unwrap(), 2048).unwrap()
    }

    fn assert_close(a: &Mat, b: &Mat, tol: f64, ctx: &str) {
        assert!(a.sub(b).max_abs() <= tol, "{ctx}");
    }

    #[test]
    fn generators_satisfy_coxeter_relations() {
        for n in 2..=6 {
            for shape in partitions_of(n) {
                let rep = build(&shape.to_string());
                let id = Mat::identity(rep.dim());
                let gens = &rep.gens;
                for (i, gi) in gens.iter().enumerate() {
                    assert_close(&gi.mul(gi), &id, 1e-9, "involution");
                    assert_close(&gi.mul(&gi.adjoint()), &id, 1e-9, "orthogonal");
                    for (j, gj) in gens.iter().enumerate().skip(i + 2) {
                        assert_close(
                            &gi.mul(gj),
                            &gj.mul(gi),
                            1e-9,
                            &format!("commuting {i},{j} in {shape}"),
                        );
                    }
                }
                for w in gens.windows(2) {
                    let aba = w[0].mul(&w[1]).mul(&w[0]);
                    let bab = w[1].mul(&w[0]).mul(&w[1]);
                    assert_close(&aba, &bab, 1e-9, &format!("braid in {shape}"));
                }
            }
        }
    }

    #[test]
    fn one_dimensional_shapes() {
        let trivial = build("4");
        let sign = build("1+1+1+1");
        for g in enumerate_group(4).unwrap() {
            assert!((trivial.matrix(&g)[(0, 0)].re - 1.0).abs() < 1e-12);
            let s = sign.matrix(&g)[(0, 0)].re;
            assert!((s - g.sign() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn homomorphism_property() {
        let rep = build("3+2");
        let group = enumerate_group(5).unwrap();
        // A deterministic spread of pairs.
        for (a, b) in (0..group.len())
            .step_by(7)
            .zip((0..group.len()).rev().step_by(11))
        {
            let (p, q) = (&group[a], &group[b]);
            let lhs = rep.matrix(&p.compose(q));
            let rhs = rep.matrix(p).mul(&rep.matrix(q));
            assert_close(&lhs, &rhs, 1e-9, "matrix(pq) = matrix(p)matrix(q)");
        }
    }

    #[test]
    fn traces_reproduce_characters() {
        for shape_text in ["3+2", "3+1+1", "2+2+1"] {
            let rep = build(shape_text);
            let shape = Partition::from_str(shape_text).unwrap();
            for g in enumerate_group(5).unwrap() {
                let tr = rep.matrix(&g).trace();
                let chi = character_value(&shape, &g.cycle_type()) as f64;
                assert!(
                    (tr.re - chi).abs() <= 1e-8 && tr.im.abs() <= 1e-12,
                    "trace {} vs character {chi} for {g} in {shape_text}",
                    tr.re
                );
            }
        }
    }

    #[test]
    fn matrices_are_orthogonal() {
        let rep = build("2+2");
        for g in enumerate_group(4).unwrap() {
            let m = rep.matrix(&g);
            assert_close(&m.mul(&m.adjoint()), &Mat::identity(rep.dim()), 1e-9, "MMᵀ=I");
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let shape = Partition::from_str("4+3+1").unwrap();
        assert!(OrthogonalRepresentation::build(&shape, 10).is_err());
        assert!(OrthogonalRepresentation::build(&shape, 2048).is_ok());
    }
}
