//! Real dense linear algebra for the coordinate systems behind membership
//! solves and rank decisions.
//!
//! Matrices are stored as lists of columns. The systems are small (a few
//! hundred rows, a few dozen columns), so one-sided Jacobi SVD and cyclic
//! Jacobi eigenvalue iteration are accurate and fast enough.

use crate::scalar::Scalar;

/// Thin SVD A = U diag(sigma) V^T with singular values sorted descending.
/// `u` and `v` are stored as columns; `u` has the shape of the input.
#[derive(Debug, Clone)]
pub struct Svd<S> {
    pub u: Vec<Vec<S>>,
    pub sigma: Vec<S>,
    pub v: Vec<Vec<S>>,
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut s = S::zero();
    for (x, y) in a.iter().zip(b) {
        s = s + *x * *y;
    }
    s
}

pub fn norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

pub fn axpy<S: Scalar>(y: &mut [S], alpha: S, x: &[S]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * *xi;
    }
}

/// One-sided Jacobi SVD. Zero columns yield zero singular values.
pub fn svd<S: Scalar>(cols: &[Vec<S>]) -> Svd<S> {
    let n = cols.len();
    if n == 0 {
        return Svd {
            u: vec![],
            sigma: vec![],
            v: vec![],
        };
    }
    let m = cols[0].len();
    let mut w: Vec<Vec<S>> = cols.to_vec();
    let mut v: Vec<Vec<S>> = (0..n)
        .map(|j| {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            e
        })
        .collect();

    let conv = S::epsilon() * S::real(64.0);
    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let app = dot(&w[p], &w[p]);
                let aqq = dot(&w[q], &w[q]);
                let apq = dot(&w[p], &w[q]);
                let scale = (app * aqq).sqrt();
                if scale == S::zero() || apq.abs() <= conv * scale {
                    continue;
                }
                let tau = (aqq - app) / (S::real(2.0) * apq);
                let t = {
                    let s = if tau >= S::zero() { S::one() } else { -S::one() };
                    s / (tau.abs() + (S::one() + tau * tau).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let wp = w[p][i];
                    let wq = w[q][i];
                    w[p][i] = c * wp - s * wq;
                    w[q][i] = s * wp + c * wq;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<S> = w.iter().map(|c| norm(c)).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap());

    let mut u = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut vv = Vec::with_capacity(n);
    for &j in &order {
        let s = norms[j];
        sigma.push(s);
        if s > S::zero() {
            u.push(w[j].iter().map(|&x| x / s).collect());
        } else {
            u.push(vec![S::zero(); m]);
        }
        vv.push(v[j].clone());
    }
    Svd { u, sigma, v: vv }
}

/// Numerical rank with a cutoff relative to the largest singular value.
pub fn rank_from_sigma<S: Scalar>(sigma: &[S], rel_cutoff: S) -> usize {
    let max = sigma.first().copied().unwrap_or_else(S::zero);
    if max == S::zero() {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel_cutoff * max).count()
}

pub fn rank<S: Scalar>(cols: &[Vec<S>], rel_cutoff: S) -> usize {
    rank_from_sigma(&svd(cols).sigma, rel_cutoff)
}

impl<S: Scalar> Svd<S> {
    /// Minimum-norm least-squares solution of A x = b using the truncated
    /// pseudoinverse.
    pub fn solve(&self, b: &[S], rel_cutoff: S) -> Vec<S> {
        self.solve_with_residual(b, rel_cutoff).0
    }

    /// Least-squares solution together with the residual norm, sharing the
    /// U-column dot products between the two.
    pub fn solve_with_residual(&self, b: &[S], rel_cutoff: S) -> (Vec<S>, S) {
        let max = self.sigma.first().copied().unwrap_or_else(S::zero);
        let n = self.v.len();
        let mut x = vec![S::zero(); n];
        let mut proj = vec![S::zero(); b.len()];
        for k in 0..n {
            let s = self.sigma[k];
            if max == S::zero() || s <= rel_cutoff * max {
                continue;
            }
            let c = dot(&self.u[k], b);
            axpy(&mut proj, c, &self.u[k]);
            axpy(&mut x, c / s, &self.v[k]);
        }
        let mut res = S::zero();
        for (pi, bi) in proj.iter().zip(b) {
            let d = *bi - *pi;
            res = res + d * d;
        }
        (x, res.sqrt())
    }

    /// Orthogonal projection of `b` onto the numerical column space,
    /// returning (projection, residual norm).
    pub fn project(&self, b: &[S], rel_cutoff: S) -> (Vec<S>, S) {
        let max = self.sigma.first().copied().unwrap_or_else(S::zero);
        let mut proj = vec![S::zero(); b.len()];
        for k in 0..self.sigma.len() {
            if max == S::zero() || self.sigma[k] <= rel_cutoff * max {
                continue;
            }
            let c = dot(&self.u[k], b);
            axpy(&mut proj, c, &self.u[k]);
        }
        let mut res = S::zero();
        for (pi, bi) in proj.iter().zip(b) {
            let d = *bi - *pi;
            res = res + d * d;
        }
        (proj, res.sqrt())
    }

    /// Basis of the numerical null space, as columns in coefficient space.
    pub fn null_space(&self, rel_cutoff: S) -> Vec<Vec<S>> {
        let max = self.sigma.first().copied().unwrap_or_else(S::zero);
        let mut out = Vec::new();
        for k in 0..self.sigma.len() {
            if max == S::zero() || self.sigma[k] <= rel_cutoff * max {
                out.push(self.v[k].clone());
            }
        }
        out
    }
}

/// Eigenvalues of a symmetric matrix (given in full, row-major nested
/// vectors) by cyclic Jacobi rotations, sorted ascending.
pub fn sym_eigenvalues<S: Scalar>(a: &[Vec<S>]) -> Vec<S> {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a.to_vec();
    for _sweep in 0..64 {
        let mut off = S::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + m[p][q] * m[p][q];
            }
        }
        let scale = (0..n)
            .map(|i| m[i][i].abs())
            .fold(S::zero(), |acc, x| acc.max(x))
            .max(S::one());
        if off.sqrt() <= S::epsilon() * S::real(64.0) * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() <= S::epsilon() * scale {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (S::real(2.0) * m[p][q]);
                let t = {
                    let s = if theta >= S::zero() { S::one() } else { -S::one() };
                    s / (theta.abs() + (S::one() + theta * theta).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let mip = m[i][p];
                    let miq = m[i][q];
                    m[i][p] = c * mip - s * miq;
                    m[i][q] = s * mip + c * miq;
                }
                for j in 0..n {
                    let mpj = m[p][j];
                    let mqj = m[q][j];
                    m[p][j] = c * mpj - s * mqj;
                    m[q][j] = s * mpj + c * mqj;
                }
            }
        }
    }
    let mut eig: Vec<S> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
