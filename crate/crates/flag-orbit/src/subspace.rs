//! Real-linear subspaces of a matrix algebra.
//!
//! A [`RealSubspace`] is the real span of a list of complex matrices. The
//! subspaces of interest (m, √-1 m, n±, z_Θ, u, u*) are all of this form;
//! complex subspaces are stored as real spans of X and √-1 X. Membership is
//! decided by least squares in flattened real coordinates with a
//! singular-value cutoff relative to the largest singular value.

use crate::error::{Error, Result};
use crate::linalg::{self, Svd};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;
use rand::Rng;

#[derive(Debug, Clone)]
pub struct RealSubspace<S: Scalar> {
    mat_dim: usize,
    basis: Vec<SquareMatrix<S>>,
    svd: Svd<S>,
    cutoff: S,
}

/// Outcome of a membership solve: it is a verdict, not an error.
#[derive(Debug, Clone)]
pub struct Membership<S> {
    pub coefficients: Vec<S>,
    pub residual: S,
    pub member: bool,
}

impl<S: Scalar> RealSubspace<S> {
    /// Span of a real-linearly independent family.
    pub fn new(basis: Vec<SquareMatrix<S>>, cutoff: S) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidParams("empty subspace basis".into()));
        }
        let mat_dim = basis[0].dim();
        let cols: Vec<Vec<S>> = basis.iter().map(|m| m.real_coords()).collect();
        let svd = linalg::svd(&cols);
        let rank = linalg::rank_from_sigma(&svd.sigma, cutoff);
        if rank != basis.len() {
            return Err(Error::DependentBasis {
                count: basis.len(),
                rank,
            });
        }
        Ok(RealSubspace {
            mat_dim,
            basis,
            svd,
            cutoff,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.mat_dim
    }

    pub fn basis(&self) -> &[SquareMatrix<S>] {
        &self.basis
    }

    /// Real-linear least-squares membership solve. The verdict uses an
    /// absolute residual threshold.
    pub fn membership(&self, x: &SquareMatrix<S>, tol: S) -> Membership<S> {
        let b = x.real_coords();
        let (coefficients, residual) = self.svd.solve_with_residual(&b, self.cutoff);
        Membership {
            coefficients,
            residual,
            member: residual <= tol,
        }
    }

    pub fn contains(&self, x: &SquareMatrix<S>, tol: S) -> bool {
        self.membership(x, tol).member
    }

    /// Largest membership residual over another family of matrices.
    pub fn max_residual_over(&self, xs: &[SquareMatrix<S>]) -> S {
        xs.iter()
            .map(|x| self.membership(x, S::zero()).residual)
            .fold(S::zero(), |a, b| a.max(b))
    }

    /// Reconstruct a matrix from basis coefficients.
    pub fn from_coefficients(&self, coeffs: &[S]) -> SquareMatrix<S> {
        let mut out = SquareMatrix::zeros(self.mat_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out = out.add(&b.scale_re(*c));
        }
        out
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &SquareMatrix<S>) -> SquareMatrix<S> {
        let (proj, _) = self.svd.project(&x.real_coords(), self.cutoff);
        SquareMatrix::from_real_coords(self.mat_dim, &proj)
    }

    /// dim(self ∩ other) = dim self + dim other - rank([self | other]).
    pub fn intersection_dim(&self, other: &RealSubspace<S>) -> usize {
        let mut cols: Vec<Vec<S>> = self.basis.iter().map(|m| m.real_coords()).collect();
        cols.extend(other.basis.iter().map(|m| m.real_coords()));
        let joint = linalg::rank(&cols, self.cutoff);
        self.dim() + other.dim() - joint
    }

    /// Random element with Frobenius norm `radius`, direction uniform over
    /// the basis coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R, radius: S) -> SquareMatrix<S> {
        loop {
            let coeffs: Vec<S> = (0..self.dim())
                .map(|_| S::real(rng.sample::<f64, _>(rand_distr::StandardNormal)))
                .collect();
            let m = self.from_coefficients(&coeffs);
            let n = m.frob_norm();
            if n > S::real(1e-12) {
                return m.scale_re(radius / n);
            }
        }
    }

    /// Gram matrix of a bilinear form over the basis.
    pub fn gram(&self, form: impl Fn(&SquareMatrix<S>, &SquareMatrix<S>) -> S) -> Vec<Vec<S>> {
        let n = self.dim();
        let mut g = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = form(&self.basis[i], &self.basis[j]);
            }
        }
        g
    }
}

/// Rank of the real span of a family of matrices.
pub fn family_rank<S: Scalar>(xs: &[SquareMatrix<S>], cutoff: S) -> usize {
    let cols: Vec<Vec<S>> = xs.iter().map(|m| m.real_coords()).collect();
    linalg::rank(&cols, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn e(i: usize, j: usize) -> SquareMatrix<f64> {
        SquareMatrix::elementary(2, i, j)
    }

    #[test]
    fn independent_basis_accepted() {
        let s = RealSubspace::new(vec![e(0, 0), e(0, 1)], 1e-8).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn dependent_basis_rejected() {
        let err = RealSubspace::new(vec![e(0, 0), e(0, 0).scale_re(2.0)], 1e-8);
        assert!(matches!(err, Err(Error::DependentBasis { .. })));
    }

    #[test]
    fn membership_of_span_element() {
        let s = RealSubspace::new(vec![e(0, 0), e(1, 1)], 1e-8).unwrap();
        let x = e(0, 0).scale_re(3.0).sub(&e(1, 1));
        let m = s.membership(&x, 1e-9);
        assert!(m.member);
        assert!((m.coefficients[0] - 3.0).abs() < 1e-12);
        assert!((m.coefficients[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_member_detected() {
        let s = RealSubspace::new(vec![e(0, 0)], 1e-8).unwrap();
        let m = s.membership(&e(0, 1), 1e-9);
        assert!(!m.member);
        assert!((m.residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_span_does_not_contain_imaginary_multiple() {
        // the real span of E_01 does not contain i E_01
        let s = RealSubspace::new(vec![e(0, 1)], 1e-8).unwrap();
        let ix = e(0, 1).scale(cx(0.0, 1.0));
        assert!(!s.contains(&ix, 1e-9));
    }

    #[test]
    fn intersection_dimension() {
        let a = RealSubspace::new(vec![e(0, 0), e(0, 1)], 1e-8).unwrap();
        let b = RealSubspace::new(vec![e(0, 1), e(1, 0)], 1e-8).unwrap();
        assert_eq!(a.intersection_dim(&b), 1);
    }
}
