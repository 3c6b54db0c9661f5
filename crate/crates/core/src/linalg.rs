//! Dense complex matrices and the two eigensolvers the crate needs:
//! a cyclic Jacobi diagonalizer for hermitian matrices (PSD projections,
//! operator norms, certificate checks) and a shifted-QR iteration on the
//! Hessenberg form for general spectra (spectral radii). Power iteration is
//! not enough here: transforms of real distributions routinely have a
//! dominant complex-conjugate pair, which defeats it.

use num_complex::Complex64;

pub type C = Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![C::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| C::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C] {
        &self.data
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: C) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Mat {
        self.scale(C::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Sum of squared entry magnitudes, `Tr(A A*)`.
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius inner product `Re Tr(A* B)` — the real inner product the
    /// certificate solver's CG iteration runs in.
    pub fn frobenius_inner(&self, rhs: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Hermitian part `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Mat {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.sub(&self.adjoint()).max_abs() <= tol
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square());
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a hermitian matrix by cyclic Jacobi sweeps.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose columns
/// are the matching eigenvectors (`A V = V diag(w)`).
pub fn hermitian_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    assert!(a.is_square(), "hermitian_eigen needs a square matrix");
    let n = a.rows;
    debug_assert!(
        a.sub(&a.adjoint()).max_abs() <= 1e-9 * (1.0 + a.max_abs()),
        "input is far from hermitian"
    );
    let mut h = a.hermitian_part();
    let mut v = Mat::identity(n);
    let scale = h.max_abs().max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(h[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = h[(p, q)];
                let b = apq.norm();
                if b <= tol * 1e-2 {
                    continue;
                }
                let phase = apq / b;
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                // Real Jacobi angle for [[app, b], [b, aqq]].
                let theta = (aqq - app) / (2.0 * b);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column rotation J: e_p -> c e_p - s conj(phase) e_q,
                // e_q -> s phase e_p + c e_q; apply H <- J* H J, V <- V J.
                let (cs, sn) = (C::new(c, 0.0), C::new(s, 0.0) * phase);
                for i in 0..n {
                    let hip = h[(i, p)];
                    let hiq = h[(i, q)];
                    h[(i, p)] = hip * cs - hiq * sn.conj();
                    h[(i, q)] = hip * sn + hiq * cs;
                }
                for j in 0..n {
                    let hpj = h[(p, j)];
                    let hqj = h[(q, j)];
                    h[(p, j)] = cs.conj() * hpj - sn * hqj;
                    h[(q, j)] = sn.conj() * hpj + cs * hqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cs - viq * sn.conj();
                    v[(i, q)] = vip * sn + viq * cs;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vs = Mat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vs[(i, new_col)] = v[(i, old_col)];
        }
    }
    (eigs, vs)
}

/// Largest singular value, i.e. the operator norm induced by the euclidean
/// vector norm.
pub fn op_norm(a: &Mat) -> f64 {
    let gram = a.adjoint().mul(a);
    let (eigs, _) = hermitian_eigen(&gram);
    eigs.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Givens pair (c real, s complex) with
/// `[c s; -conj(s) c] * [a; b] = [r; 0]`.
fn givens(a: C, b: C) -> (f64, C) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C::new(0.0, 0.0));
    }
    let an = a.norm();
    let denom = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        (0.0, b.conj() / bn)
    } else {
        (an / denom, (a / an) * b.conj() / denom)
    }
}

/// All eigenvalues of a square complex matrix: Householder reduction to
/// upper Hessenberg form, then explicit single-shift QR with Wilkinson
/// shifts and deflation.
pub fn eigenvalues(a: &Mat) -> Vec<C> {
    assert!(a.is_square(), "eigenvalues needs a square matrix");
    let n = a.rows;
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![a[(0, 0)]];
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    qr_eigenvalues(&mut h)
}

fn hessenberg_in_place(h: &mut Mat) {
    let n = h.rows;
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut x: Vec<C> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm <= 1e-300 {
            continue;
        }
        let alpha = if x[0].norm() == 0.0 {
            C::new(-xnorm, 0.0)
        } else {
            -(x[0] / x[0].norm()) * xnorm
        };
        x[0] -= alpha;
        let vnorm_sq: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq <= 1e-300 {
            continue;
        }
        // H <- P H P with P = I - 2 v v* / (v* v), acting on rows/cols k+1..n.
        for j in 0..n {
            let dot: C = x
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * h[(k + 1 + t, j)])
                .sum();
            let f = dot * (2.0 / vnorm_sq);
            for (t, vt) in x.iter().enumerate() {
                let val = h[(k + 1 + t, j)] - vt * f;
                h[(k + 1 + t, j)] = val;
            }
        }
        for i in 0..n {
            let dot: C = x
                .iter()
                .enumerate()
                .map(|(t, vt)| h[(i, k + 1 + t)] * vt)
                .sum();
            let f = dot * (2.0 / vnorm_sq);
            for (t, vt) in x.iter().enumerate() {
                let val = h[(i, k + 1 + t)] - f * vt.conj();
                h[(i, k + 1 + t)] = val;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of the 2x2 block [[a, b], [c, d]].
fn eig2(a: C, b: C, c: C, d: C) -> (C, C) {
    let tr = a + d;
    let half = tr * 0.5;
    let disc = (half * half - (a * d - b * c)).sqrt();
    (half + disc, half - disc)
}

fn qr_eigenvalues(h: &mut Mat) -> Vec<C> {
    let n = h.rows;
    let mut eigs = vec![C::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let scale = h.max_abs().max(1e-300);
    let eps = f64::EPSILON;
    let mut iters_at_hi = 0usize;

    loop {
        // Deflate negligible subdiagonals in the active part.
        for i in 1..=hi {
            let small = eps * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()).max(scale * eps);
            if h[(i, i - 1)].norm() <= small {
                h[(i, i - 1)] = C::new(0.0, 0.0);
            }
        }
        if hi == 0 || h[(hi, hi - 1)].norm() == 0.0 {
            eigs[hi] = h[(hi, hi)];
            if hi == 0 {
                break;
            }
            hi -= 1;
            iters_at_hi = 0;
            continue;
        }
        // Find the window [lo, hi] of the unreduced trailing block.
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }
        if hi - lo == 1 {
            let (e1, e2) = eig2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eigs[hi] = e1;
            eigs[lo] = e2;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iters_at_hi = 0;
            continue;
        }

        iters_at_hi += 1;
        assert!(
            iters_at_hi <= 200,
            "QR iteration failed to converge; pathological input"
        );
        // Wilkinson shift: eigenvalue of the trailing 2x2 closest to the
        // corner entry; occasionally an exceptional shift to break cycles.
        let mu = if iters_at_hi % 13 == 0 {
            h[(hi, hi)] + h[(hi, hi - 1)] * 0.75
        } else {
            let (e1, e2) = eig2(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            );
            let corner = h[(hi, hi)];
            if (e1 - corner).norm() <= (e2 - corner).norm() {
                e1
            } else {
                e2
            }
        };

        // Explicit QR step on the window: H - mu I = Q R, H <- R Q + mu I.
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots: Vec<(f64, C, usize)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let top = h[(k, j)];
                let bot = h[(k + 1, j)];
                h[(k, j)] = top * c + bot * s;
                h[(k + 1, j)] = -top * s.conj() + bot * c;
            }
            h[(k + 1, k)] = C::new(0.0, 0.0);
            rots.push((c, s, k));
        }
        for (c, s, k) in rots {
            // Right-multiply by G_k^H on columns k, k+1.
            for i in lo..=(k + 1).min(hi) {
                let left = h[(i, k)];
                let right = h[(i, k + 1)];
                h[(i, k)] = left * c + right * s.conj();
                h[(i, k + 1)] = -left * s + right * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    eigs
}

/// Magnitude of the largest eigenvalue.
pub fn spectral_radius_of(a: &Mat) -> f64 {
    eigenvalues(a)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
