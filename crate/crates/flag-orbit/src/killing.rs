//! Cartan–Killing form: the ad-trace oracle and the certified fast path.
//!
//! `killing_via_ad` computes tr(ad X ∘ ad Y) in an explicit basis and is the
//! ground truth. For the concrete families the form equals a family scalar
//! times the trace form — 2n for sl(n, C), 2l+2 for sp(l, C), 2l-2 for
//! so(2l, C) — and [`KillingForm`] uses that shortcut after the scalar has
//! been certified once per (family, rank) against the oracle.

use crate::error::{Error, Result};
use crate::matrix::{comm, SquareMatrix};
use crate::roots::Family;
use crate::scalar::{Cx, Scalar};
use crate::subspace::RealSubspace;
use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

/// The adjoint representation of a Lie algebra given by a complex basis.
///
/// Complex coordinates are recovered from a real-linear solve over
/// {e_k, i e_k}, so the basis matrices themselves need only be real-linearly
/// independent together with their imaginary multiples.
pub struct AdTraceForm<S: Scalar> {
    basis: Vec<SquareMatrix<S>>,
    span: RealSubspace<S>,
    pub closure_residual: S,
}

impl<S: Scalar> AdTraceForm<S> {
    /// Build the representation, verifying bracket closure of the basis.
    pub fn new(basis: &[SquareMatrix<S>], cutoff: S, closure_tol: S) -> Result<Self> {
        let mut full = Vec::with_capacity(2 * basis.len());
        full.extend(basis.iter().cloned());
        full.extend(
            basis
                .iter()
                .map(|b| b.scale(Complex::new(S::zero(), S::one()))),
        );
        let span = RealSubspace::new(full, cutoff)?;
        let mut worst = S::zero();
        for x in basis {
            for y in basis {
                let r = span.membership(&comm(x, y), S::zero()).residual;
                worst = worst.max(r);
            }
        }
        if worst > closure_tol {
            return Err(Error::NotClosedUnderBracket {
                residual: worst.lossy_f64(),
            });
        }
        Ok(AdTraceForm {
            basis: basis.to_vec(),
            span,
            closure_residual: worst,
        })
    }

    pub fn complex_dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of ad(x) in the complex basis.
    pub fn ad_matrix(&self, x: &SquareMatrix<S>) -> SquareMatrix<S> {
        let d = self.basis.len();
        let mut out = SquareMatrix::zeros(d);
        for (j, e) in self.basis.iter().enumerate() {
            let coeffs = self.span.membership(&comm(x, e), S::zero()).coefficients;
            for k in 0..d {
                out.set(k, j, Complex::new(coeffs[k], coeffs[d + k]));
            }
        }
        out
    }

    /// tr(ad x ∘ ad y); symmetric in its arguments.
    pub fn pairing(&self, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> Cx<S> {
        let ax = self.ad_matrix(x);
        let ay = self.ad_matrix(y);
        let d = self.basis.len();
        let mut t = Cx::<S>::zero();
        for i in 0..d {
            for j in 0..d {
                t = t + ax.at(i, j) * ay.at(j, i);
            }
        }
        t
    }
}

/// One-shot ad-trace Killing pairing.
pub fn killing_via_ad<S: Scalar>(
    basis: &[SquareMatrix<S>],
    x: &SquareMatrix<S>,
    y: &SquareMatrix<S>,
    cutoff: S,
    closure_tol: S,
) -> Result<Cx<S>> {
    Ok(AdTraceForm::new(basis, cutoff, closure_tol)?.pairing(x, y))
}

/// Family scalar c with K(X, Y) = c tr(XY).
pub fn family_scalar<S: Scalar>(family: Family, rank: usize) -> S {
    let c = match family {
        Family::A => 2 * (rank + 1),
        Family::C => 2 * rank + 2,
        Family::D => 2 * rank - 2,
    };
    S::real(c as f64)
}

/// The Killing form in its scalar-times-trace incarnation.
#[derive(Debug, Clone, Copy)]
pub struct KillingForm<S> {
    pub family: Family,
    pub rank: usize,
    pub scalar: S,
}

impl<S: Scalar> KillingForm<S> {
    pub fn new(family: Family, rank: usize) -> Self {
        KillingForm {
            family,
            rank,
            scalar: family_scalar(family, rank),
        }
    }

    pub fn pairing(&self, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> Cx<S> {
        x.mul(y).trace() * Complex::new(self.scalar, S::zero())
    }

    /// Real part of the pairing; the callers that use this feed real
    /// subalgebra elements where the form is real.
    pub fn pairing_re(&self, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> S {
        self.pairing(x, y).re
    }
}

pub fn killing_fast<S: Scalar>(
    family: Family,
    rank: usize,
    x: &SquareMatrix<S>,
    y: &SquareMatrix<S>,
) -> Cx<S> {
    KillingForm::new(family, rank).pairing(x, y)
}

/// Certification record for the scalar·trace shortcut.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalarCertification<S> {
    pub family: Family,
    pub rank: usize,
    pub scalar: S,
    pub samples: usize,
    pub max_rel_deviation: S,
}

/// Compare the fast path against the ad-trace oracle on random pairs drawn
/// from the real span of the basis.
pub fn certify_killing_scalar<S: Scalar>(
    family: Family,
    rank: usize,
    basis: &[SquareMatrix<S>],
    samples: usize,
    seed: u64,
    cutoff: S,
    closure_tol: S,
) -> Result<ScalarCertification<S>> {
    let form = AdTraceForm::new(basis, cutoff, closure_tol)?;
    let fast = KillingForm::new(family, rank);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = S::zero();
    for _ in 0..samples {
        let x = random_combination(basis, &mut rng);
        let y = random_combination(basis, &mut rng);
        let via_ad = form.pairing(&x, &y);
        let quick = fast.pairing(&x, &y);
        let denom = via_ad.norm().max(S::one());
        worst = worst.max((via_ad - quick).norm() / denom);
    }
    Ok(ScalarCertification {
        family,
        rank,
        scalar: fast.scalar,
        samples,
        max_rel_deviation: worst,
    })
}

fn random_combination<S: Scalar, R: Rng>(
    basis: &[SquareMatrix<S>],
    rng: &mut R,
) -> SquareMatrix<S> {
    let mut out = SquareMatrix::zeros(basis[0].dim());
    for b in basis {
        let c = Complex::new(
            S::real(rng.random_range(-1.0..1.0)),
            S::real(rng.random_range(-1.0..1.0)),
        );
        out = out.add(&b.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    /// Complex basis of sl(2, C): {B, E_12, E_21}.
    fn sl2_complex_basis() -> Vec<SquareMatrix<f64>> {
        vec![
            SquareMatrix::from_diag(&[cx(1.0, 0.0), cx(-1.0, 0.0)]),
            SquareMatrix::elementary(2, 0, 1),
            SquareMatrix::elementary(2, 1, 0),
        ]
    }

    #[test]
    fn killing_of_b_is_eight() {
        // tr(ad B ∘ ad B) over sl(2, C) = 8
        let basis = sl2_complex_basis();
        let b = &basis[0];
        let k = killing_via_ad(&basis, b, b, 1e-8, 1e-9).unwrap();
        assert!((k - cx(8.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn killing_symmetry() {
        let basis = sl2_complex_basis();
        let form = AdTraceForm::new(&basis, 1e-8, 1e-9).unwrap();
        let x = basis[1].add(&basis[0].scale(cx(0.5, 0.25)));
        let y = basis[2].sub(&basis[0]);
        let xy = form.pairing(&x, &y);
        let yx = form.pairing(&y, &x);
        assert!((xy - yx).norm() < 1e-10);
    }

    #[test]
    fn fast_path_matches_oracle_for_sl2() {
        let basis = sl2_complex_basis();
        let b = &basis[0];
        // c = 2n = 4, tr(B^2) = 2 => 8
        let k = killing_fast(Family::A, 1, b, b);
        assert!((k - cx(8.0, 0.0)).norm() < 1e-12);
        let cert = certify_killing_scalar(Family::A, 1, &basis, 25, 7, 1e-8, 1e-9).unwrap();
        assert!(cert.max_rel_deviation < 1e-9);
    }

    #[test]
    fn fast_path_bilinear_in_zero() {
        let basis = sl2_complex_basis();
        let z = SquareMatrix::zeros(2);
        let k = killing_fast(Family::A, 1, &basis[0], &z);
        assert!(k.norm() < 1e-15);
    }

    #[test]
    fn closure_check_rejects_non_algebra() {
        // {E_12, E_21} alone is not closed: [E_12, E_21] = diag(1, -1)
        let basis = vec![
            SquareMatrix::<f64>::elementary(2, 0, 1),
            SquareMatrix::<f64>::elementary(2, 1, 0),
        ];
        assert!(matches!(
            AdTraceForm::new(&basis, 1e-8, 1e-9),
            Err(Error::NotClosedUnderBracket { .. })
        ));
    }

    #[test]
    fn scaled_trace_identity_random_sl_n() {
        // K(X, Y) = 2n tr(XY) on sl(n, C) for n <= 4
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4usize {
            let mut basis = Vec::new();
            for k in 0..n - 1 {
                let mut h = SquareMatrix::<f64>::zeros(n);
                h.set(k, k, cx(1.0, 0.0));
                h.set(k + 1, k + 1, cx(-1.0, 0.0));
                basis.push(h);
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(SquareMatrix::elementary(n, i, j));
                    }
                }
            }
            let form = AdTraceForm::new(&basis, 1e-8, 1e-8).unwrap();
            for _ in 0..3 {
                let x = random_combination(&basis, &mut rng);
                let mut y = SquareMatrix::zeros(n);
                for b in &basis {
                    y = y.add(&b.scale(cx(rng.random_range(-1.0..1.0), 0.0)));
                }
                let oracle = form.pairing(&x, &y);
                let quick = x.mul(&y).trace() * cx(2.0 * n as f64, 0.0);
                assert!(
                    (oracle - quick).norm() < 1e-8 * oracle.norm().max(1.0),
                    "n = {n}"
                );
            }
        }
    }
}
