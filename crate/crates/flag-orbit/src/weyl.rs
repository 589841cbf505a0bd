//! Weyl bases with Killing normalization, and the compact real form.
//!
//! Root vectors start from elementary-matrix generators of the concrete
//! realizations, then each pair (X_α, X_{-α}) is rescaled symmetrically so
//! that K(X_α, X_{-α}) = 1. The symmetric split keeps the compact
//! conjugation acting as τ(X_α) = -X_{-α} exactly, which in turn makes
//!
//!   u = √-1 h_R  ⊕  Σ_{α>0} span_R( X_α - X_{-α},  √-1 (X_α + X_{-α}) )
//!
//! a compact real form: closed under bracket, Killing-negative-definite,
//! of real dimension equal to dim_C g.

use crate::error::{Error, Result};
use crate::killing::KillingForm;
use crate::matrix::{comm, SquareMatrix};
use crate::roots::{Family, RootFunctional, RootSystem};
use crate::scalar::{cx, i as im, Cx, Scalar};
use crate::subspace::RealSubspace;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct WeylBasis<S: Scalar> {
    pub rs: RootSystem<S>,
    /// Root vectors for the positive roots, aligned with `rs.positive_roots`.
    x_pos: Vec<SquareMatrix<S>>,
    x_neg: Vec<SquareMatrix<S>>,
    /// H_α = [X_α, X_{-α}], aligned with the positive roots.
    h_dual: Vec<SquareMatrix<S>>,
    /// m_{α,β} over signed root pairs with α + β a root.
    pub structure: BTreeMap<(Vec<i32>, Vec<i32>), S>,
    pub killing: KillingForm<S>,
}

/// Build the Weyl basis of the root system's realization.
pub fn weyl_basis<S: Scalar>(rs: RootSystem<S>, cutoff: S, tol: S) -> Result<WeylBasis<S>> {
    let killing: KillingForm<S> = KillingForm::new(rs.family, rs.rank);
    let dim = rs.matrix_dim;
    let l = rs.rank;

    let mut x_pos = Vec::with_capacity(rs.positive_roots.len());
    let mut x_neg = Vec::with_capacity(rs.positive_roots.len());
    for root in &rs.positive_roots {
        let (raw_p, raw_m) = raw_vectors(rs.family, dim, l, root)?;
        let t: Cx<S> = raw_p.mul(&raw_m).trace();
        if t.im.abs() > tol || t.re <= S::zero() {
            return Err(Error::NormalizationFailure(format!(
                "trace pairing of {root} is not positive real"
            )));
        }
        let s: S = (killing.scalar * t.re).sqrt().recip();
        x_pos.push(raw_p.scale_re(s));
        x_neg.push(raw_m.scale_re(s));
    }

    // normalization and ad-diagonality guards
    for (k, root) in rs.positive_roots.iter().enumerate() {
        let kval = killing.pairing(&x_pos[k], &x_neg[k]);
        if (kval - Cx::<S>::new(S::one(), S::zero())).norm() > tol.max(S::real(1e-12)) {
            return Err(Error::NormalizationFailure(format!(
                "K(X_{root}, X_-{root}) = {kval} is not 1"
            )));
        }
        for h in &rs.cartan_basis {
            let want = x_pos[k].scale(root.eval(h));
            let got = comm(h, &x_pos[k]);
            if !got.approx_eq(&want, tol.max(S::real(1e-12))) {
                return Err(Error::NormalizationFailure(format!(
                    "ad(H) is not diagonal on X_{root}"
                )));
            }
        }
    }

    let h_dual: Vec<SquareMatrix<S>> = (0..rs.positive_roots.len())
        .map(|k| comm(&x_pos[k], &x_neg[k]))
        .collect();

    let structure = structure_constants(&rs, &x_pos, &x_neg, cutoff, tol)?;

    Ok(WeylBasis {
        rs,
        x_pos,
        x_neg,
        h_dual,
        structure,
        killing,
    })
}

fn raw_vectors<S: Scalar>(
    family: Family,
    dim: usize,
    l: usize,
    root: &RootFunctional,
) -> Result<(SquareMatrix<S>, SquareMatrix<S>)> {
    let e = |i, j| SquareMatrix::<S>::elementary(dim, i, j);
    let support: Vec<(usize, i32)> = root
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    match family {
        Family::A => {
            // λ_i - λ_j
            let (i, j) = difference_indices(&support, root)?;
            Ok((e(i, j), e(j, i)))
        }
        Family::C => match support.as_slice() {
            [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                let (i, j) = (*i, *j);
                Ok((
                    e(i, j).sub(&e(l + j, l + i)),
                    e(j, i).sub(&e(l + i, l + j)),
                ))
            }
            [(i, 1), (j, 1)] => {
                let (i, j) = (*i, *j);
                Ok((
                    e(i, l + j).add(&e(j, l + i)),
                    e(l + j, i).add(&e(l + i, j)),
                ))
            }
            [(i, 2)] => {
                let i = *i;
                Ok((e(i, l + i), e(l + i, i)))
            }
            _ => Err(Error::InvalidParams(format!("{root} is not a C_l root"))),
        },
        Family::D => match support.as_slice() {
            [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                let (i, j) = (*i, *j);
                Ok((
                    e(i, j).sub(&e(l + j, l + i)),
                    e(j, i).sub(&e(l + i, l + j)),
                ))
            }
            [(i, 1), (j, 1)] => {
                let (i, j) = (*i, *j);
                Ok((
                    e(i, l + j).sub(&e(j, l + i)),
                    e(l + j, i).sub(&e(l + i, j)),
                ))
            }
            _ => Err(Error::InvalidParams(format!("{root} is not a D_l root"))),
        },
    }
}

fn difference_indices(
    support: &[(usize, i32)],
    root: &RootFunctional,
) -> Result<(usize, usize)> {
    match support {
        [(i, 1), (j, -1)] => Ok((*i, *j)),
        [(j, -1), (i, 1)] => Ok((*i, *j)),
        _ => Err(Error::InvalidParams(format!("{root} is not a difference root"))),
    }
}

fn structure_constants<S: Scalar>(
    rs: &RootSystem<S>,
    x_pos: &[SquareMatrix<S>],
    x_neg: &[SquareMatrix<S>],
    cutoff: S,
    tol: S,
) -> Result<BTreeMap<(Vec<i32>, Vec<i32>), S>> {
    let mut signed: Vec<(RootFunctional, &SquareMatrix<S>)> = Vec::new();
    for (k, r) in rs.positive_roots.iter().enumerate() {
        signed.push((r.clone(), &x_pos[k]));
        signed.push((r.negated(), &x_neg[k]));
    }
    let lookup = |f: &RootFunctional| -> Option<&SquareMatrix<S>> {
        signed.iter().find(|(r, _)| r == f).map(|(_, x)| *x)
    };

    let mut table = BTreeMap::new();
    for (alpha, xa) in &signed {
        for (beta, xb) in &signed {
            let sum = alpha.plus(beta);
            let br = comm(xa, xb);
            if sum.is_zero() {
                continue; // [X_α, X_{-α}] = H_α, kept separately
            }
            match lookup(&sum) {
                Some(xs) => {
                    // coefficient of X_{α+β}, complex via the real span {X, iX}
                    let span = RealSubspace::new(
                        vec![xs.clone(), xs.scale(im::<S>())],
                        cutoff,
                    )?;
                    let mem = span.membership(&br, tol);
                    if !mem.member {
                        return Err(Error::NormalizationFailure(format!(
                            "[X_{alpha}, X_{beta}] is not a multiple of X_{sum}"
                        )));
                    }
                    if mem.coefficients[1].abs() > tol {
                        return Err(Error::NormalizationFailure(format!(
                            "m({alpha}, {beta}) has imaginary part {}",
                            mem.coefficients[1]
                        )));
                    }
                    table.insert(
                        (alpha.coeffs.clone(), beta.coeffs.clone()),
                        mem.coefficients[0],
                    );
                }
                None => {
                    if br.max_abs() > tol {
                        return Err(Error::NormalizationFailure(format!(
                            "[X_{alpha}, X_{beta}] nonzero but {sum} is not a root"
                        )));
                    }
                }
            }
        }
    }
    Ok(table)
}

impl<S: Scalar> WeylBasis<S> {
    /// Root vector X_α for any (signed) root.
    pub fn root_vector(&self, root: &RootFunctional) -> Option<&SquareMatrix<S>> {
        if let Some(k) = self.rs.positive_index(root) {
            return Some(&self.x_pos[k]);
        }
        let neg = root.negated();
        self.rs.positive_index(&neg).map(|k| &self.x_neg[k])
    }

    pub fn x_positive(&self, k: usize) -> &SquareMatrix<S> {
        &self.x_pos[k]
    }

    pub fn x_negative(&self, k: usize) -> &SquareMatrix<S> {
        &self.x_neg[k]
    }

    /// H_α = [X_α, X_{-α}] for a positive root index.
    pub fn h_of(&self, k: usize) -> &SquareMatrix<S> {
        &self.h_dual[k]
    }

    /// Killing dual of a root: the Cartan element with K(H_α, H) = α(H)
    /// for every Cartan H, obtained by a linear solve over the Cartan
    /// basis. For -α this is -H_α.
    pub fn cartan_dual(&self, root: &RootFunctional) -> Result<SquareMatrix<S>> {
        if !self.rs.is_root(root) {
            return Err(Error::InvalidParams(format!("{root} is not a root")));
        }
        let cart = &self.rs.cartan_basis;
        let cols: Vec<Vec<S>> = cart
            .iter()
            .map(|hj| {
                cart.iter()
                    .map(|hk| self.killing.pairing(hj, hk).re)
                    .collect()
            })
            .collect();
        let rhs: Vec<S> = cart.iter().map(|hk| root.eval(hk).re).collect();
        let x = crate::linalg::svd(&cols).solve(&rhs, S::real(1e-12));
        let mut h = SquareMatrix::zeros(self.rs.matrix_dim);
        for (c, hk) in x.iter().zip(cart) {
            h = h.add(&hk.scale_re(*c));
        }
        Ok(h)
    }

    /// A_α = X_α - X_{-α}, the first compact generator of a positive root.
    pub fn a_gen(&self, k: usize) -> SquareMatrix<S> {
        self.x_pos[k].sub(&self.x_neg[k])
    }

    /// S_α = √-1 (X_α + X_{-α}), the second compact generator.
    pub fn s_gen(&self, k: usize) -> SquareMatrix<S> {
        self.x_pos[k].add(&self.x_neg[k]).scale(im::<S>())
    }

    /// Real basis of g as a real vector space: {H_k, iH_k} ∪ {X_α, iX_α}.
    pub fn full_real_basis(&self) -> Vec<SquareMatrix<S>> {
        let mut out = Vec::new();
        for h in &self.rs.cartan_basis {
            out.push(h.clone());
            out.push(h.scale(im::<S>()));
        }
        for k in 0..self.rs.positive_roots.len() {
            out.push(self.x_pos[k].clone());
            out.push(self.x_pos[k].scale(im::<S>()));
            out.push(self.x_neg[k].clone());
            out.push(self.x_neg[k].scale(im::<S>()));
        }
        out
    }

    /// Complex basis of g (one matrix per complex dimension).
    pub fn complex_basis(&self) -> Vec<SquareMatrix<S>> {
        let mut out: Vec<SquareMatrix<S>> = self.rs.cartan_basis.clone();
        for k in 0..self.rs.positive_roots.len() {
            out.push(self.x_pos[k].clone());
            out.push(self.x_neg[k].clone());
        }
        out
    }
}

/// The compact real form assembled over the Weyl basis.
#[derive(Debug, Clone)]
pub struct CompactForm<S: Scalar> {
    pub space: RealSubspace<S>,
    pub rank: usize,
}

impl<S: Scalar> CompactForm<S> {
    /// Index of iH_k in the basis layout.
    pub fn cartan_index(&self, k: usize) -> usize {
        k
    }

    /// Indices of (A_α, S_α) for positive root k.
    pub fn root_indices(&self, k: usize) -> (usize, usize) {
        (self.rank + 2 * k, self.rank + 2 * k + 1)
    }
}

/// Construct u = √-1 h_R + Σ span(A_α, S_α) as a real subspace.
pub fn compact_real_form<S: Scalar>(wb: &WeylBasis<S>, cutoff: S) -> Result<CompactForm<S>> {
    let mut basis = Vec::new();
    for h in &wb.rs.cartan_basis {
        basis.push(h.scale(im::<S>()));
    }
    for k in 0..wb.rs.positive_roots.len() {
        basis.push(wb.a_gen(k));
        basis.push(wb.s_gen(k));
    }
    let space = RealSubspace::new(basis, cutoff)
        .map_err(|e| Error::ClosureFailure(format!("compact form basis: {e}")))?;
    Ok(CompactForm {
        space,
        rank: wb.rs.rank,
    })
}

/// Largest bracket-closure residual of a subspace: max over basis pairs of
/// the distance of [X, Y] from the span.
pub fn closure_residual<S: Scalar>(space: &RealSubspace<S>) -> S {
    let mut worst = S::zero();
    for x in space.basis() {
        for y in space.basis() {
            let r = space.membership(&comm(x, y), S::zero()).residual;
            worst = worst.max(r);
        }
    }
    worst
}

/// Anti-Hermitian traceless basis of su(n), for cross-checks.
pub fn su_n_basis<S: Scalar>(n: usize) -> Vec<SquareMatrix<S>> {
    let mut out = Vec::new();
    for k in 0..n - 1 {
        let mut h = SquareMatrix::zeros(n);
        h.set(k, k, cx(0.0, 1.0));
        h.set(k + 1, k + 1, cx(0.0, -1.0));
        out.push(h);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut a = SquareMatrix::zeros(n);
            a.set(i, j, cx(1.0, 0.0));
            a.set(j, i, cx(-1.0, 0.0));
            out.push(a);
            let mut s = SquareMatrix::zeros(n);
            s.set(i, j, cx(0.0, 1.0));
            s.set(j, i, cx(0.0, 1.0));
            out.push(s);
        }
    }
    out
}
