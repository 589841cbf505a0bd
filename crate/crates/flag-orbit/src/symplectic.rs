//! The Hermitian form H_σ, the symplectic form ω, the
//! Kirillov–Kostant–Souriau form, and the Lagrangian reports.
//!
//! The conjugation entering H_σ is the antilinear involution τ of g fixing
//! the compact real form. It is realized as an operator table over the
//! Weyl basis — τ(X_α) = -X_{-α}, τ = -1 on h_R — extended antilinearly,
//! which stays correct in the D-case realization where the compact form is
//! written through conjugated matrices. The forms:
//!
//!   H_σ(X, Y) = -K(X, τ Y)            (positive definite Hermitian)
//!   ω(X, Y)   = -Im H_σ(X, Y) = Im K(X, τ Y)
//!   Ω_ξ([X, ξ], [Y, ξ]) = K(ξ, [X, Y])   (KKS on the orbit)
//!
//! F_Θ and S are Lagrangian for ω; S is not Lagrangian for the KKS form.

use crate::error::{Error, Result};
use crate::flag::FlagDatum;
use crate::matrix::{comm, SquareMatrix};
use crate::orbit::OrbitPoint;
use crate::roots::RootFunctional;
use crate::scalar::{i as im, Cx, Scalar};
use crate::subspace::RealSubspace;

/// The compact conjugation τ as an antilinear operator table over the
/// full real basis {H_k, iH_k, X_α, iX_α} of g.
pub struct CompactConjugation<S: Scalar> {
    span: RealSubspace<S>,
    images: Vec<SquareMatrix<S>>,
}

impl<S: Scalar> CompactConjugation<S> {
    pub fn new(fd: &FlagDatum<S>) -> Result<Self> {
        let wb = &fd.wb;
        let mut basis = Vec::new();
        let mut images = Vec::new();
        // τ(H) = -H and τ(iH) = iH on the real Cartan
        for h in &wb.rs.cartan_basis {
            basis.push(h.clone());
            images.push(h.neg());
            basis.push(h.scale(im::<S>()));
            images.push(h.scale(im::<S>()));
        }
        // τ(X_α) = -X_{-α}, τ(iX_α) = iX_{-α}
        for k in 0..wb.rs.positive_roots.len() {
            let xp = wb.x_positive(k);
            let xm = wb.x_negative(k);
            basis.push(xp.clone());
            images.push(xm.neg());
            basis.push(xp.scale(im::<S>()));
            images.push(xm.scale(im::<S>()));
            basis.push(xm.clone());
            images.push(xp.neg());
            basis.push(xm.scale(im::<S>()));
            images.push(xp.scale(im::<S>()));
        }
        let span = RealSubspace::new(basis, fd.tol.sv_cutoff)?;
        Ok(CompactConjugation { span, images })
    }

    /// Apply τ. The input must lie in g; the expansion residual is checked.
    pub fn apply(&self, x: &SquareMatrix<S>) -> Result<SquareMatrix<S>> {
        let mem = self.span.membership(x, S::infinity());
        let scale = x.frob_norm().max(S::one());
        if mem.residual > S::real(1e-8) * scale {
            return Err(Error::MembershipViolation {
                what: "argument of tau outside g",
                residual: mem.residual.lossy_f64(),
            });
        }
        let mut out = SquareMatrix::zeros(x.dim());
        for (c, img) in mem.coefficients.iter().zip(&self.images) {
            out = out.add(&img.scale_re(*c));
        }
        Ok(out)
    }
}

/// The three 2-forms bundled with their flag datum.
pub struct SymplecticForms<'a, S: Scalar> {
    pub fd: &'a FlagDatum<S>,
    pub tau: CompactConjugation<S>,
}

impl<'a, S: Scalar> SymplecticForms<'a, S> {
    pub fn new(fd: &'a FlagDatum<S>) -> Result<Self> {
        Ok(SymplecticForms {
            fd,
            tau: CompactConjugation::new(fd)?,
        })
    }

    /// H_σ(X, Y) = -K(X, τY); sesquilinear, positive definite.
    pub fn hermitian(&self, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> Result<Cx<S>> {
        let ty = self.tau.apply(y)?;
        Ok(-self.fd.killing().pairing(x, &ty))
    }

    /// ω(X, Y) = -Im H_σ(X, Y) = Im K(X, τY); antisymmetric real bilinear.
    pub fn omega(&self, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> Result<S> {
        Ok(-self.hermitian(x, y)?.im)
    }

    /// KKS form on tangent vectors [X, ξ], [Y, ξ]: K(ξ, [X, Y]). The
    /// callers feed elements of real subalgebras, where the value is real;
    /// the imaginary part is returned for the caller to inspect.
    pub fn kks(&self, xi: &OrbitPoint<S>, x: &SquareMatrix<S>, y: &SquareMatrix<S>) -> Cx<S> {
        self.fd.killing().pairing(&xi.value, &comm(x, y))
    }
}

/// Lagrangian report for a tangent family at a list of base points.
#[derive(Debug, Clone)]
pub struct LagrangianReport<S> {
    /// max |ω| over tangent-basis pairs, over all base points.
    pub max_omega: S,
    /// Real dimension of the tangent space (rank of the bracket family).
    pub tangent_dim: usize,
    /// Real dimension of the orbit tangent space.
    pub orbit_dim: usize,
    /// Complex dimension of the center of z_Θ (1 for the semi-Kähler cases).
    pub z_center_complex_dim: usize,
}

impl<S: Scalar> LagrangianReport<S> {
    pub fn lagrangian(&self, tol: S) -> bool {
        self.max_omega < tol && 2 * self.tangent_dim == self.orbit_dim
    }
}

/// Evaluate ω on the tangent spaces spanned by brackets of `directions`
/// at each base point, and collect the half-dimension data.
pub fn lagrangian_report<S: Scalar>(
    forms: &SymplecticForms<S>,
    directions: &RealSubspace<S>,
    base_points: &[OrbitPoint<S>],
) -> Result<LagrangianReport<S>> {
    let fd = forms.fd;
    let mut max_omega = S::zero();
    let mut tangent_dim = 0usize;
    for point in base_points {
        let tangents: Vec<SquareMatrix<S>> = directions
            .basis()
            .iter()
            .map(|d| comm(d, &point.value))
            .collect();
        tangent_dim = tangent_dim.max(crate::subspace::family_rank(&tangents, fd.tol.sv_cutoff));
        // ω(t1, t2) = Im K(t1, τ t2): apply τ once per tangent
        let taus: Vec<SquareMatrix<S>> = tangents
            .iter()
            .map(|t| forms.tau.apply(t))
            .collect::<Result<_>>()?;
        for (k, t1) in tangents.iter().enumerate() {
            for t2 in taus.iter().skip(k + 1) {
                max_omega = max_omega.max(fd.killing().pairing(t1, t2).im.abs());
            }
        }
    }
    Ok(LagrangianReport {
        max_omega,
        tangent_dim,
        orbit_dim: fd.n_plus.dim() + fd.n_minus.dim(),
        z_center_complex_dim: z_center_complex_dim(fd),
    })
}

/// Complex dimension of the center of z_Θ (contains H_Θ; equal to one in
/// the three families, which is the semi-Kähler criterion).
pub fn z_center_complex_dim<S: Scalar>(fd: &FlagDatum<S>) -> usize {
    let basis = fd.z_theta.basis();
    let cols: Vec<Vec<S>> = basis
        .iter()
        .map(|b| {
            let mut stacked = Vec::new();
            for z in basis {
                stacked.extend(comm(b, z).real_coords());
            }
            stacked
        })
        .collect();
    let null = crate::linalg::svd(&cols).null_space(fd.tol.sv_cutoff);
    null.len() / 2
}

/// A nonzero KKS value witnessing that S is not Lagrangian for the KKS
/// form: evaluated at ξ = H_Θ on the pair (√-1 A_α, √-1 S_α) for a root
/// α outside ⟨Θ⟩.
#[derive(Debug, Clone)]
pub struct KksWitness<S: Scalar> {
    pub root: RootFunctional,
    pub value: S,
    pub x: SquareMatrix<S>,
    pub y: SquareMatrix<S>,
    /// ω on the same pair, for contrast (zero by Theorem D).
    pub omega_value: S,
}

/// Search the roots outside ⟨Θ⟩ for a KKS value above the nonzero
/// threshold. All candidate values below the threshold falsifies the
/// non-Lagrangian claim and is surfaced as an error.
pub fn kks_nonlagrangian_witness<S: Scalar>(
    forms: &SymplecticForms<S>,
) -> Result<KksWitness<S>> {
    let fd = forms.fd;
    let origin = OrbitPoint {
        value: fd.h_theta.clone(),
        s_generator: None,
        fiber_witness: None,
    };
    let mut best: Option<KksWitness<S>> = None;
    for &k in &fd.outside_positive {
        let x = fd.wb.a_gen(k).scale(im::<S>());
        let y = fd.wb.s_gen(k).scale(im::<S>());
        let v = forms.kks(&origin, &x, &y);
        let omega_value = forms.omega(&comm(&x, &fd.h_theta), &comm(&y, &fd.h_theta))?;
        let w = KksWitness {
            root: fd.wb.rs.positive_roots[k].clone(),
            value: v.re,
            x,
            y,
            omega_value,
        };
        if v.im.abs() > fd.tol.base {
            continue;
        }
        if v.re.abs() > fd.tol.nonzero {
            return Ok(w);
        }
        best = Some(w);
    }
    match best {
        Some(w) => Err(Error::MembershipViolation {
            what: "all KKS candidate values below the nonzero threshold",
            residual: w.value.lossy_f64(),
        }),
        None => Err(Error::InvalidParams("no roots outside <Theta>".into())),
    }
}
